"""Algebraic-topology invariants of a datum.

The chain complex of a datum with no 3-handles is
``0 -> Z^{#2-handles} --(exponent-sum matrix)--> Z^{#1-handles} -> 0``;
H1 is the cokernel, H2 the kernel.  Boundary homology comes from the full
symmetric linking matrix with dotted circles converted to 0-framed
components.  The intersection form is the restriction of the 2-handle
linking matrix to the kernel lattice.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .datum import KirbyDatum, exponent_matrix, full_linking_matrix
from .errors import UnsupportedThreeHandlesError
from .linalg import IntMatrix


@dataclass(frozen=True)
class HomologyProfile:
    h1_invariants: tuple[int, ...]
    b2: int
    h2_free_rank: int
    h3_rank: int
    is_contractible_homology: bool

    @staticmethod
    def ball() -> "HomologyProfile":
        return HomologyProfile((), 0, 0, 0, True)


def homology(d: KirbyDatum) -> HomologyProfile:
    """Homology profile of the 4-manifold the datum describes."""
    if d.three_handles != 0:
        raise UnsupportedThreeHandlesError(
            "homology of data with explicit 3-handles is not supported")
    mat, _, _ = exponent_matrix(d)
    h1 = tuple(linalg.coker_invariants(mat))
    b2 = len(linalg.kernel_basis(mat))
    contractible = (not h1) and b2 == 0
    return HomologyProfile(h1, b2, b2, 0, contractible)


@dataclass(frozen=True)
class BoundaryHomology:
    invariant_factors: tuple[int, ...]
    is_homology_sphere: bool
    determinant: int


def boundary_h1(d: KirbyDatum) -> BoundaryHomology:
    """First homology of the boundary 3-manifold.

    Presented by the full linking matrix after dot-to-zero conversion;
    the boundary is a homology sphere exactly when |det| = 1.
    """
    if d.three_handles != 0:
        raise UnsupportedThreeHandlesError(
            "boundary homology of data with explicit 3-handles is not supported")
    mat, _ = full_linking_matrix(d)
    factors = tuple(linalg.coker_invariants(mat))
    determinant = linalg.det(mat)
    return BoundaryHomology(factors, abs(determinant) == 1, determinant)


def intersection_form(d: KirbyDatum) -> IntMatrix:
    form, _ = intersection_form_with_basis(d)
    return form


def intersection_form_with_basis(d: KirbyDatum):
    """Intersection form on H2 plus the kernel basis realizing it.

    Returns (form, basis) where basis[i] is an integer combination of the
    2-handles (sorted by id) with zero exponent sums.
    """
    if d.three_handles != 0:
        raise UnsupportedThreeHandlesError(
            "intersection form of data with explicit 3-handles is not supported")
    mat, _, col_ids = exponent_matrix(d)
    basis = linalg.kernel_basis(mat)
    k = len(basis)
    index = {hid: i for i, hid in enumerate(col_ids)}
    n = len(col_ids)
    link = [[0] * n for _ in range(n)]
    for h in d.two_handles:
        i = index[h.id]
        link[i][i] = h.framing
        for other, value in h.linking_map.items():
            if other in index:
                link[i][index[other]] = value
                link[index[other]][i] = value
    entries = []
    for v in basis:
        lv = [sum(link[r][c] * v[c] for c in range(n)) for r in range(n)]
        for w in basis:
            entries.append(sum(w[r] * lv[r] for r in range(n)))
    return IntMatrix(k, k, tuple(entries)), basis


# --- characteristic numbers -----------------------------------------------

@dataclass(frozen=True)
class CharNumbers:
    """(b2+, b2-) bookkeeping for closed-manifold connected sums."""
    b2_plus: int
    b2_minus: int

    def __post_init__(self):
        if self.b2_plus < 0 or self.b2_minus < 0:
            raise ValueError("b2 components must be non-negative")

    @property
    def b2(self) -> int:
        return self.b2_plus + self.b2_minus

    @property
    def signature(self) -> int:
        return self.b2_plus - self.b2_minus

    def __add__(self, other: "CharNumbers") -> "CharNumbers":
        return CharNumbers(self.b2_plus + other.b2_plus, self.b2_minus + other.b2_minus)


def char_zero() -> CharNumbers:
    return CharNumbers(0, 0)


def cp2(k: int = 1) -> CharNumbers:
    return CharNumbers(k, 0)


def cp2_bar(k: int = 1) -> CharNumbers:
    return CharNumbers(0, k)


def connected_sum(*parts: CharNumbers) -> CharNumbers:
    total = char_zero()
    for p in parts:
        total = total + p
    return total


def char_numbers_from_form(q: IntMatrix) -> CharNumbers:
    """Characteristic numbers carried by a nondegenerate intersection form."""
    pos, neg, zero = linalg.signature(q)
    if zero:
        raise ValueError("form is degenerate; characteristic numbers undefined")
    return CharNumbers(pos, neg)


def char_numbers_from_datum(d: KirbyDatum) -> CharNumbers:
    return char_numbers_from_form(intersection_form(d))
