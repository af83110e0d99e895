#!/usr/bin/env python3
"""Print the cork-order table for all {*,0}-sequences up to a given length.

Columns: sequence, period, certified cork order (NOT_A_CORK for constant
sequences), and the order of the wheel rotation as a permutation.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from corkcalc.sequences import (all_sequences, cork_order, period,
                                rotation_map_order)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=6)
    args = parser.parse_args()

    print(f"{'sequence':<12} {'period':>6} {'cork order':>12} {'map order':>10}")
    for n in range(1, args.n_max + 1):
        for x in all_sequences(n):
            order = cork_order(x)
            shown = "NOT_A_CORK" if order is None else str(order)
            print(f"{x:<12} {period(x):>6} {shown:>12} {rotation_map_order(n):>10}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
