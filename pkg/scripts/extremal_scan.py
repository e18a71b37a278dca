"""Scan L(N) for all N up to a limit and list the extremal N (|L(N)| = N - 1).

    python3 scripts/extremal_scan.py --limit 1000000 --out scan.csv
"""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from lgoldbach import build_parity_table, conv_scan


@dataclass
class ScanConfig:
    limit: int = 10**6
    workers: int = 1
    out: str | None = None


def run(cfg: ScanConfig) -> None:
    t0 = time.perf_counter()
    table = build_parity_table(cfg.limit, workers=cfg.workers)
    t1 = time.perf_counter()
    rep = conv_scan(table, cfg.limit)
    t2 = time.perf_counter()
    print(f"sieve {t1 - t0:.2f} s, scan {t2 - t1:.2f} s")
    print(f"extremal N <= {cfg.limit}: {rep.extremal}")
    N = rep.Ns
    ratio = np.abs(rep.L[2:]) / (N - 1)
    order = np.argsort(-ratio, kind="stable")[len(rep.extremal):][:10]
    print("closest non-extremal:", ", ".join(f"N={N[i]} ratio={ratio[i]:.4f}" for i in order))
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(rep.to_csv())


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=ScanConfig.limit)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out")
    run(ScanConfig(**vars(ap.parse_args())))
