"""Classify all 64 graded tensor products of the reference models.

Usage: python3 scripts/type_table.py [--seeds 3]
"""

import argparse
import time

from realbrauer.graded_types import TypeIndex, type_table


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=3, help="number of random seeds to try")
    args = ap.parse_args()
    for p in range(8):
        print(TypeIndex.of(p))
    for seed in range(args.seeds):
        start = time.perf_counter()
        T = type_table(seed)
        ok = all(T[p][q] == (p + q) % 8 for p in range(8) for q in range(8))
        print(f"seed {seed}: {'addition mod 8' if ok else 'MISMATCH'} "
              f"({time.perf_counter() - start:.2f} s)")
        if not ok:
            for row in T:
                print(" ".join(map(str, row)))


if __name__ == "__main__":
    main()
