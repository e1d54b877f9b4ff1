"""Exact linear algebra over the rationals.

Vectors are tuples of Fractions, matrices are lists (or tuples) of row
vectors.  Reduced row echelon form is used wherever an explicit basis is
needed; plain ranks go through Bareiss fraction-free elimination on an
integer-cleared copy, which keeps intermediate entries as single big
integers instead of fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch, LieKernelError

Vector = tuple[Fraction, ...]
Matrix = list[Vector]


def vec(entries) -> Vector:
    return tuple(Fraction(x) for x in entries)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def scale(c, v: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def mat_vec(m: Matrix, v: Vector) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return [tuple(dot(row, col) for col in cols) for row in a]


def transpose(m: Matrix) -> Matrix:
    return [tuple(col) for col in zip(*m)]


def identity(n: int) -> Matrix:
    return [unit(n, i) for i in range(n)]


def rref(rows) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(map(Fraction, row)) for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def _clear_denominators(rows) -> list[list[int]]:
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        lcm = 1
        for x in fr:
            d = x.denominator
            lcm = lcm // gcd(lcm, d) * d
        out.append([int(x * lcm) for x in fr])
    return out


def rank(rows) -> int:
    """Matrix rank via Bareiss fraction-free elimination."""
    m = _clear_denominators(rows)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            mi, mr = m[i], m[r]
            fi = mi[c]
            for j in range(c, ncols):
                mi[j] = (mi[j] * piv - fi * mr[j]) // prev
        prev = piv
        r += 1
        if r == nrows:
            break
    return r


def nullspace(rows, ncols: int | None = None) -> Matrix:
    """Echelonized basis of {x : A x = 0}."""
    rows = list(rows)
    if ncols is None:
        if not rows:
            raise LieKernelError("nullspace needs ncols for an empty matrix")
        ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -red[r][f]
        basis.append(tuple(x))
    return basis


def solve(a_rows, b: Vector) -> Vector | None:
    """One exact solution of A x = b (free variables set to 0), or None."""
    a_rows = list(a_rows)
    ncols = len(a_rows[0]) if a_rows else 0
    aug = [tuple(row) + (bi,) for row, bi in zip(a_rows, b, strict=True)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = red[r][-1]
    return tuple(x)


def det(rows) -> Fraction:
    """Exact determinant by fraction-free elimination."""
    m = [list(map(Fraction, row)) for row in rows]
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("determinant of a non-square matrix")
    sign = 1
    d = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] * inv
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return sign * d


def inverse(rows) -> Matrix:
    n = len(rows)
    aug = [tuple(map(Fraction, row)) + unit(n, i) for i, row in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise LieKernelError("matrix is singular")
    return [row[n:] for row in red]


def is_positive_definite(rows) -> bool:
    """Sylvester: all leading principal minors positive."""
    n = len(rows)
    return all(det([row[: k + 1] for row in rows[: k + 1]]) > 0 for k in range(n))


class Subspace:
    """A solved linear subspace: reduced-echelon basis rows of ambient R^n."""

    def __init__(self, ambient: int, rows=()):
        self.ambient = ambient
        basis, pivots = rref([tuple(map(Fraction, r)) for r in rows])
        for r in basis:
            if len(r) != ambient:
                raise DimensionMismatch("basis row has wrong length")
        self.basis: Matrix = basis
        self.pivots: list[int] = pivots

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vector) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def reduce(self, v: Vector) -> Vector:
        """Canonical representative of v modulo this subspace.

        Eliminates every pivot coordinate; idempotent, and two vectors
        differing by a subspace element reduce identically.
        """
        w = list(map(Fraction, v))
        if len(w) != self.ambient:
            raise DimensionMismatch("vector has wrong length")
        for row, p in zip(self.basis, self.pivots):
            f = w[p]
            if f:
                for j in range(self.ambient):
                    w[j] -= f * row[j]
        return tuple(w)

    def coordinates(self, v: Vector) -> Vector | None:
        """Coefficients of v in the echelon basis, or None if v is outside."""
        w = list(map(Fraction, v))
        coords = []
        for row, p in zip(self.basis, self.pivots):
            f = w[p]
            coords.append(f)
            if f:
                for j in range(self.ambient):
                    w[j] -= f * row[j]
        if any(x != 0 for x in w):
            return None
        return tuple(coords)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, tuple(self.basis)))

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(row) for row in self.basis)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of R^{self.ambient})"
