"""Brauer group components for the sample groupoids and a few larger groups.

Usage: python3 scripts/brauer_survey.py
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from conftest import extra_groupoids, sample_groupoids  # noqa: E402

from realbrauer.extensions import brauer_group  # noqa: E402


def main():
    header = f"{'groupoid':34} {'HR0(Z8)':8} {'HR1(Z2)':12} {'HR2(S1)':18} {'Ext':16} split order"
    print(header)
    print("-" * len(header))
    for G in sample_groupoids() + extra_groupoids()[:3]:
        start = time.perf_counter()
        r = brauer_group(G).report()
        print(f"{G.name[:34]:34} {str(r.type_component):8} {str(r.grading_component):12} "
              f"{str(r.twist_component):18} {str(r.extension):16} "
              f"{'yes' if r.splits else 'no':5} {r.order}"
              f"  ({time.perf_counter() - start:.1f} s)")
        for w in r.warnings:
            print(f"  warning: {w}")


if __name__ == "__main__":
    main()
