"""Exact integer matrix algebra: Smith normal form, determinants, kernels,
cokernel invariants, signatures, and negative-definite form recognition.

Everything runs on Python integers (arbitrary precision); no floating point
enters any result.  Pivot choices are deterministic: smallest nonzero
absolute value, ties broken by position.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import NotSquareError


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count must equal rows * cols")

    @staticmethod
    def from_rows(rows: list[list[int]]) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
        return IntMatrix(r, c, tuple(int(v) for row in rows for v in row))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, (0,) * (rows * cols))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols: (i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.at(k, j) for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return self.mul(other)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.at(i, j) == self.at(j, i) for i in range(self.rows) for j in range(i))

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.at(i, i) for i in range(min(self.rows, self.cols)))

    def __str__(self):
        return "\n".join(" ".join(f"{v:4d}" for v in self.row(i)) for i in range(self.rows))


@dataclass(frozen=True)
class SNFResult:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix


def det(m: IntMatrix) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise NotSquareError(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot_row = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if pivot_row is None:
                return 0
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def snf(m: IntMatrix) -> SNFResult:
    """Smith normal form with unimodular transforms: U @ m @ V == S.

    The diagonal of S is non-negative and satisfies d_i | d_{i+1}.
    """
    a = m.to_rows()
    R, C = m.rows, m.cols
    u = IntMatrix.identity(R).to_rows()
    v = IntMatrix.identity(C).to_rows()

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        if q:
            arow, srow = a[dst], a[src]
            for k in range(C):
                arow[k] += q * srow[k]
            urow, usrow = u[dst], u[src]
            for k in range(R):
                urow[k] += q * usrow[k]

    def add_col(dst, src, q):
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in v:
                row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def find_pivot(t):
        best = None
        for i in range(t, R):
            for j in range(t, C):
                val = a[i][j]
                if val != 0 and (best is None or abs(val) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(R, C):
        piv = find_pivot(t)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # Clear column t, re-pivoting on any nonzero remainder.
            restart = False
            for i in range(t + 1, R):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, C):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            if any(a[i][t] for i in range(t + 1, R)):
                continue
            # Enforce the divisibility chain before moving on.
            d = a[t][t]
            bad = None
            for i in range(t + 1, R):
                for j in range(t + 1, C):
                    if a[i][j] % d != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    return SNFResult(IntMatrix.from_rows(u), IntMatrix.from_rows(a), IntMatrix.from_rows(v))


def rank(m: IntMatrix) -> int:
    return sum(1 for d in snf(m).S.diagonal() if d != 0)


def kernel_basis(m: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the integer kernel lattice {v : m @ v = 0}.

    Vectors are columns of the SNF transform V for the zero diagonal slots,
    hence primitive and linearly independent.
    """
    res = snf(m)
    diag = res.S.diagonal()
    basis = []
    for j in range(m.cols):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            basis.append(res.V.col(j))
    return basis


def coker_invariants(m: IntMatrix) -> list[int]:
    """Nontrivial invariant factors of Z^rows / column-span(m).

    Finite factors appear in divisibility order; each free summand is a 0.
    An empty list means the cokernel is trivial.
    """
    diag = snf(m).S.diagonal()
    nonzero = [d for d in diag if d != 0]
    factors = [d for d in nonzero if d != 1]
    factors.extend([0] * (m.rows - len(nonzero)))
    return factors


def signature(q: IntMatrix) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric integer matrix.

    Computed by exact rational congruence diagonalization.
    """
    if not q.is_symmetric():
        raise ValueError("signature needs a symmetric matrix")
    n = q.rows
    a = [[Fraction(q.at(i, j)) for j in range(n)] for i in range(n)]
    pos = neg = zero = 0

    def sym_add(dst, src, factor):
        # congruence: row dst += factor * row src, then same for columns
        for k in range(n):
            a[dst][k] += factor * a[src][k]
        for k in range(n):
            a[k][dst] += factor * a[k][src]

    def sym_swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    for i in range(n):
        if a[i][i] == 0:
            j_diag = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if j_diag is not None:
                sym_swap(i, j_diag)
            else:
                j_off = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if j_off is None:
                    zero += 1
                    continue
                sym_add(i, j_off, Fraction(1))
        pivot = a[i][i]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, n):
            if a[j][i] != 0:
                sym_add(j, i, -a[j][i] / pivot)
    return pos, neg, zero


@dataclass(frozen=True)
class DiagMinusOneResult:
    """Three-valued verdict: verdict True/False, or None for inconclusive."""
    verdict: bool | None
    witness: IntMatrix | None
    reason: str

    def __bool__(self):
        return self.verdict is True


def _cholesky(p: list[list[Fraction]]):
    """Decompose positive definite p as sum d_k (x_k + sum_{j>k} l_kj x_j)^2."""
    n = len(p)
    a = [row[:] for row in p]
    d = []
    l = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        d.append(a[k][k])
        for j in range(k + 1, n):
            l[k][j] = a[k][j] / a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] -= a[i][k] * a[k][j] / a[k][k]
    return d, l


def _isqrt_frac(x: Fraction) -> int:
    # floor(sqrt(p/q)) = floor(sqrt(p*q)/q)
    return isqrt(x.numerator * x.denominator) // x.denominator


def _norm_one_vectors(p_rows: list[list[Fraction]], height: int):
    """Yield integer vectors v with v^T P v == 1 (P positive definite),
    coordinates bounded by ``height``, in deterministic order."""
    n = len(p_rows)
    d, l = _cholesky(p_rows)
    v = [0] * n

    def rec(k, remaining):
        if k < 0:
            if remaining == 0:
                yield tuple(v)
            return
        center = -sum(l[k][j] * v[j] for j in range(k + 1, n))
        if d[k] <= 0:
            return
        bound = remaining / d[k]
        r = _isqrt_frac(bound) + 1
        lo = max(-height, _frac_ceil(center - r))
        hi = min(height, _frac_floor(center + r))
        for x in range(lo, hi + 1):
            term = d[k] * (Fraction(x) - center) ** 2
            if term <= remaining:
                v[k] = x
                yield from rec(k - 1, remaining - term)
                v[k] = 0

    yield from rec(n - 1, Fraction(1))


def _frac_ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _frac_floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def is_diag_minus_one(q: IntMatrix, height: int = 4) -> DiagMinusOneResult:
    """Decide whether symmetric q is unimodularly congruent to -Identity.

    Greedy: peel off norm -1 vectors with coefficients bounded by ``height``
    and recurse on the orthogonal complement lattice.  Returns a definite
    False on any definiteness or determinant obstruction; an exhausted
    search without obstruction is inconclusive, never False.
    """
    if not q.is_symmetric():
        raise ValueError("is_diag_minus_one needs a symmetric matrix")
    n = q.rows
    if n == 0:
        return DiagMinusOneResult(True, IntMatrix.identity(0), "empty form")
    pos, neg, zero = signature(q)
    if pos or zero:
        return DiagMinusOneResult(False, None, f"not negative definite (inertia {(pos, neg, zero)})")
    if abs(det(q)) != 1:
        return DiagMinusOneResult(False, None, "determinant is not a unit")

    columns: list[tuple[int, ...]] = []
    # transform columns of the original lattice basis, built up as we peel
    basis = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    current = q
    while current.rows > 0:
        m = current.rows
        vec = None
        for i in range(m):
            if current.at(i, i) == -1:
                vec = tuple(1 if k == i else 0 for k in range(m))
                break
        if vec is None:
            p_rows = [[Fraction(-current.at(i, j)) for j in range(m)] for i in range(m)]
            vec = next(_norm_one_vectors(p_rows, height), None)
        if vec is None:
            return DiagMinusOneResult(None, None, "search budget exhausted")
        ambient = tuple(sum(vec[k] * basis[k][i] for k in range(m)) for i in range(n))
        columns.append(ambient)
        row = IntMatrix(1, m, tuple(
            sum(vec[k] * current.at(k, j) for k in range(m)) for j in range(m)))
        complement = kernel_basis(row)
        basis = [tuple(sum(c[k] * basis[k][i] for k in range(m)) for i in range(n))
                 for c in complement]
        b = IntMatrix(m, len(complement), tuple(
            complement[j][i] for i in range(m) for j in range(len(complement))))
        current = b.transpose() @ current @ b

    witness = IntMatrix(n, n, tuple(columns[j][i] for i in range(n) for j in range(n)))
    check = witness.transpose() @ q @ witness
    neg_identity = IntMatrix(n, n, tuple(-1 if i == j else 0 for i in range(n) for j in range(n)))
    if check != neg_identity:
        raise AssertionError("internal error: witness does not verify")
    return DiagMinusOneResult(True, witness, "witness verified")
