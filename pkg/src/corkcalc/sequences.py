"""Cyclic {*,0}-sequence combinatorics.

A sequence is a nonempty string over the alphabet ``*`` and ``0``.  Entry i
selects which member of the i-th circle pair of a wheel datum carries the
dot; cyclic shifts model rotating the wheel.  Cork-order computation rests
on the (documented) composability axiom: if two boundary self-maps of a
manifold each extend over the interior, so does their composite, hence a
rotation extends whenever some power fixing the sequence does.
"""

from __future__ import annotations

import itertools

STAR = "*"
ZERO = "0"


def check_sequence(x: str) -> str:
    """Validate a {*,0}-sequence literal and return it unchanged."""
    if not isinstance(x, str) or len(x) < 1:
        raise ValueError("sequence must be a nonempty string of '*' and '0'")
    for ch in x:
        if ch not in (STAR, ZERO):
            raise ValueError(f"invalid sequence symbol {ch!r}")
    return x


def shift(x: str, i: int) -> str:
    """Cyclic shift: entry j of the result is entry (j - i) mod n of x."""
    check_sequence(x)
    n = len(x)
    i %= n
    return x[n - i:] + x[: n - i]


def period(x: str) -> int:
    """Least p > 0 with shift(x, p) == x.  Always divides len(x)."""
    check_sequence(x)
    for p in range(1, len(x) + 1):
        if shift(x, p) == x:
            return p
    raise AssertionError("unreachable: shift by n is the identity")


def is_constant(x: str) -> bool:
    check_sequence(x)
    return len(set(x)) == 1


def cork_order(x: str) -> int | None:
    """Certified cork order of the wheel manifold indexed by x.

    Returns the sequence period when x is non-constant (period > 1).
    Returns None for constant sequences: the period-based certificate does
    not apply there, reported as NOT_A_CORK by the CLI.
    """
    if is_constant(x):
        return None
    return period(x)


def rotation_map_order(n: int) -> int:
    """Order of the one-step wheel rotation as a permutation of 2n circles."""
    if n < 1:
        raise ValueError("wheel size must be >= 1")
    perm = {j: (j - 1) % n for j in range(n)}
    order = 1
    current = perm
    while any(current[j] != j for j in range(n)):
        current = {j: perm[current[j]] for j in range(n)}
        order += 1
    return order


def all_sequences(n: int):
    """Iterate all 2**n sequences of length n in lexicographic order."""
    for combo in itertools.product((ZERO, STAR), repeat=n):
        yield "".join(combo)
