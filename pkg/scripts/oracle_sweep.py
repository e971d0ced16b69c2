"""Compare the SNF engine with the brute-force oracle on every small groupoid.

Usage: python3 scripts/oracle_sweep.py [--max-degree 2] [--budget N]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from conftest import FINITE_COEFFS, extra_groupoids, sample_groupoids  # noqa: E402

from realbrauer.coefficients import RealCoefficient, Z8  # noqa: E402
from realbrauer.cohomology import (BudgetExceeded, DEFAULT_BUDGET,  # noqa: E402
                                   brute_force_cohomology, cohomology)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=2)
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    ap.add_argument("--wide", action="store_true", help="also try Z8 and Z8 with negation")
    args = ap.parse_args()
    coeffs = list(FINITE_COEFFS)
    if args.wide:
        coeffs += [Z8, RealCoefficient.cyclic(8, -1)]
    checked = skipped = bad = 0
    for G in sample_groupoids() + extra_groupoids():
        start = time.perf_counter()
        for A in coeffs:
            for n in range(args.max_degree + 1):
                try:
                    oracle = brute_force_cohomology(G, n, A, args.budget)
                except BudgetExceeded:
                    skipped += 1
                    continue
                engine = cohomology(G, n, A)
                checked += 1
                if engine != oracle:
                    bad += 1
                    print(f"MISMATCH {G.name} {A} n={n}: engine {engine}, oracle {oracle}")
        print(f"{G.name:36} {time.perf_counter() - start:7.2f} s", flush=True)
    print(f"checked {checked}, over budget {skipped}, mismatches {bad}")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
