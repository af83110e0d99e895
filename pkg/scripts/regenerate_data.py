#!/usr/bin/env python3
"""Regenerate every bundled data file under src/corkcalc/data/.

Run from the repository root after changing a generator; the test suite
asserts the shipped files match the generators, so drift is caught.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from corkcalc import datum as datum_io
from corkcalc import families, stein

E_FAMILY_RANGE = [(n, m) for n in range(1, 7) for m in range(1, 4)]
SURFACE_RANGE = [1, 2, 3, 4]
FRONT_RANGE = [(n, m) for n in range(1, 7) for m in range(1, 4)]
TRANSCRIPTION_NOTE = ("transcription generated by scripts/regenerate_data.py; "
                      "input to the framing checks, not an existence proof")
EXTRAPOLATION_NOTE = "pattern extrapolated beyond the drawn wheel size 4"


def main() -> int:
    root = Path(__file__).resolve().parents[1] / "src" / "corkcalc" / "data"
    (root / "families").mkdir(parents=True, exist_ok=True)
    (root / "surfaces").mkdir(parents=True, exist_ok=True)
    (root / "fronts").mkdir(parents=True, exist_ok=True)

    for n, m in E_FAMILY_RANGE:
        path = root / "families" / f"E_{n}_{m}.json"
        path.write_text(datum_io.dumps(families.generate_e_family(n, m)))
        print(f"wrote {path}")

    for l in SURFACE_RANGE:
        path = root / "surfaces" / f"E{l}.json"
        path.write_text(datum_io.dumps(families.generate_elliptic_surface(l)))
        print(f"wrote {path}")

    for n, m in FRONT_RANGE:
        events, corr = stein.wheel_front_events(n, m)
        flags = (TRANSCRIPTION_NOTE,)
        if n > 4:
            flags += (EXTRAPOLATION_NOTE,)
        doc = stein.FrontDocument(stein.LegendrianFront(tuple(events)),
                                  tuple(sorted(corr.items())), flags)
        path = root / "fronts" / f"C_{n}_{m}.front"
        path.write_text(stein.front_to_text(doc))
        print(f"wrote {path}")

    trefoil = stein.FrontDocument(
        stein.LegendrianFront(tuple(stein.max_tb_reference_events("trefoil"))),
        flags=(TRANSCRIPTION_NOTE,))
    (root / "fronts" / "trefoil.front").write_text(stein.front_to_text(trefoil))
    print(f"wrote {root / 'fronts' / 'trefoil.front'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
