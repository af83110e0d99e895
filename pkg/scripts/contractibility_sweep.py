#!/usr/bin/env python3
"""Sweep every wheel datum in a parameter box and certify contractibility.

For each (n, m, sequence): the homology profile must match the 4-ball and
the fundamental-group presentation must simplify to nothing.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from corkcalc.families import build_X
from corkcalc.invariants import homology
from corkcalc.presentations import pi1_presentation, tietze_simplify
from corkcalc.sequences import all_sequences


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=6)
    parser.add_argument("--m-max", type=int, default=3)
    parser.add_argument("--budget", type=int, default=10_000)
    args = parser.parse_args()

    start = time.monotonic()
    failures = 0
    cases = 0
    for n in range(1, args.n_max + 1):
        for m in range(1, args.m_max + 1):
            for x in all_sequences(n):
                cases += 1
                d = build_X(n, m, x)
                profile = homology(d)
                _, certified = tietze_simplify(pi1_presentation(d), args.budget)
                if not (profile.is_contractible_homology and certified):
                    failures += 1
                    print(f"FAIL n={n} m={m} x={x}: {profile}, pi1 certified={certified}")
    elapsed = time.monotonic() - start
    print(f"{cases} data checked in {elapsed:.2f}s, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
