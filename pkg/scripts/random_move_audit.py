#!/usr/bin/env python3
"""Randomized audit of the move engine's invariants.

Performs random walks of boundary-preserving moves over the generated
families and checks, after every single move: boundary homology invariant
factors unchanged, 4-manifold homology profile behaves as the move
prescribes, slides realize an exact unimodular congruence of the full
linking matrix, and blow-downs drop b2 by exactly one.
"""

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from corkcalc.datum import full_linking_matrix, validate
from corkcalc.families import build_W, build_W_twisted, build_X, build_Z
from corkcalc.invariants import boundary_h1, homology
from corkcalc.linalg import IntMatrix
from corkcalc.moves import apply_move, blow_down, slide_2_over_2


def checked_slide(d, h1, h2, sign):
    before, order = full_linking_matrix(d)
    out = slide_2_over_2(d, h1, h2, sign)
    after, _ = full_linking_matrix(out)
    n = len(order)
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[order.index(h2)][order.index(h1)] = sign
    e = IntMatrix.from_rows(rows)
    assert e.transpose().mul(before).mul(e) == after, "slide congruence failed"
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--moves", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--walk", type=int, default=50)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    starts = [
        lambda: build_W(3, 1),
        lambda: build_W(4, 2),
        lambda: build_X(4, 1, "*0*0"),
        lambda: build_X(5, 2, "*00*0"),
        lambda: build_Z(4, 1, 2),
        lambda: build_W_twisted(4, 1, 2),
    ]
    walk = 0
    restarts = 0
    d = starts[0]()
    done = 0
    while done < args.moves:
        if walk >= args.walk or not d.two_handles:
            restarts += 1
            d = starts[restarts % len(starts)]()
            walk = 0
        before_boundary = boundary_h1(d).invariant_factors
        before_b2 = homology(d).b2
        options = ["slide"] if len(d.handle_ids) >= 2 else []
        if any(len(h.word) == 1 for h in d.two_handles):
            options.append("cancel")
        if isinstance(d.meta_map.get("sequence"), str):
            options += ["rotate", "twist"]
        if any(not h.word and h.framing in (1, -1) for h in d.two_handles):
            options.append("blow_down")
        if len(d.handle_ids) <= 16:
            options.append("blow_up")
        if not options:
            walk = args.walk
            continue
        kind = rng.choice(options)
        if kind == "slide":
            h1, h2 = rng.sample(list(d.handle_ids), 2)
            out = checked_slide(d, h1, h2, rng.choice((1, -1)))
            assert homology(out).b2 == before_b2
        elif kind == "cancel":
            g, h = next((h.word.letters[0][0], h.id)
                        for h in d.two_handles if len(h.word) == 1)
            out = apply_move(d, "cancel_1_2", {"g": g, "h": h})
            assert homology(out).b2 == before_b2
        elif kind == "rotate":
            out = apply_move(d, "rotate", {"i": rng.randrange(d.meta_map["n"])})
        elif kind == "twist":
            try:
                out = apply_move(d, "twist_wheel",
                                 {"i": rng.randrange(d.meta_map["n"])})
            except Exception:
                walk = args.walk
                continue
        elif kind == "blow_up":
            out = apply_move(d, "blow_up", {"id": f"bu{done}",
                                            "sign": rng.choice((1, -1))})
            assert homology(out).b2 == before_b2 + 1
        else:
            target = next(h.id for h in d.two_handles
                          if not h.word and h.framing in (1, -1))
            out = blow_down(d, target)
            assert homology(out).b2 == before_b2 - 1, "blow-down must drop b2 by 1"
        assert boundary_h1(out).invariant_factors == before_boundary, kind
        assert validate(out).ok
        d = out
        done += 1
        walk += 1
    print(f"{done} moves audited over {restarts + 1} walks: all invariants held")
    return 0


if __name__ == "__main__":
    sys.exit(main())
