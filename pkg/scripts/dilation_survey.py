"""For each odd prime p, test whether the Liouville spectrum mod p is
invariant under every dilation xi -> d xi with sign lambda(d), and compare
with the sign condition on the (m, j) pairs.

    python3 scripts/dilation_survey.py --pmax 60
"""

import argparse
from dataclasses import dataclass

from lgoldbach import SignFunction, build_parity_table
from lgoldbach.arith import primes_up_to
from lgoldbach.signature import equivcond_scan
from lgoldbach.spectrum import dilation_sweep


@dataclass
class SurveyConfig:
    pmax: int = 60


def run(cfg: SurveyConfig) -> None:
    lam = SignFunction.liouville(build_parity_table(max(cfg.pmax, 2) ** 2))  # pairs reach p*q
    print("p,max_residual,worst_d,prime_dilations_exact,sign_condition_holds")
    for p in primes_up_to(cfg.pmax)[1:].tolist():
        rows = dilation_sweep(lam, p, lam)
        _, worst_d, _, worst = max(rows, key=lambda r: r[3])
        qs = primes_up_to(p - 1).tolist()
        exact = all(rows[q - 1][3] < 1e-9 * p for q in qs)
        cond = all(equivcond_scan(lam, p, q) == 0 for q in qs)
        print(f"{p},{worst:.3e},{worst_d},{int(exact)},{int(cond)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pmax", type=int, default=SurveyConfig.pmax)
    run(SurveyConfig(**vars(ap.parse_args())))
