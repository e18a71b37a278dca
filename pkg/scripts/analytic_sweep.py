"""Tabulate L(1, chi_p), the smoothed sums and the normalized ratios over a
range of primes, and report the largest ratio seen.

    python3 scripts/analytic_sweep.py --pmax 10000 --out analytic.csv
"""

import argparse
from dataclasses import dataclass

from lgoldbach import build_parity_table
from lgoldbach.analytic import analytic_report
from lgoldbach.arith import primes_up_to


@dataclass
class SweepConfig:
    pmin: int = 3
    pmax: int = 10_000
    out: str | None = None


def run(cfg: SweepConfig) -> None:
    table = build_parity_table(max(cfg.pmax, 2))
    primes = [p for p in primes_up_to(cfg.pmax).tolist() if p >= max(cfg.pmin, 3)]
    rep = analytic_report(table, primes)
    p, r = rep.max_livigen_ratio
    pv = max(rep.records, key=lambda rec: rec.pv_stat)
    print(f"{len(primes)} primes in [{cfg.pmin}, {cfg.pmax}]")
    print(f"max livigen ratio {r:.6g} at p = {p}")
    print(f"max PV statistic {pv.pv_stat:.6g} at p = {pv.p}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(rep.to_csv())


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pmin", type=int, default=SweepConfig.pmin)
    ap.add_argument("--pmax", type=int, default=SweepConfig.pmax)
    ap.add_argument("--out")
    run(SweepConfig(**vars(ap.parse_args())))
