"""Exact linear algebra over the rationals.

Everything here works on ``fractions.Fraction`` entries.  Vectors are plain
tuples; matrices are immutable row tuples.  ``IntEchelon`` is a fraction-free
incremental row-echelon builder used by the closure loops, where Fraction
arithmetic would dominate the run time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    """Vector or subspace sizes do not match."""


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def vec(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(frac(x) for x in values)


def zero_vec(n: int) -> tuple[Fraction, ...]:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> tuple[Fraction, ...]:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


@dataclass(frozen=True)
class Matrix:
    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ncols:
                raise DimensionError("ragged matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], ncols: int | None = None) -> "Matrix":
        rows = tuple(vec(r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("cannot infer column count of an empty matrix")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(unit_vec(n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(tuple(zero_vec(ncols) for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix(tuple(self.column(j) for j in range(self.ncols)), self.nrows)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place Gauss-Jordan; pivot row = first row (from the current one) with a nonzero entry."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if inv != 1:
            for j in range(c, ncols):
                if pr[j]:
                    pr[j] *= inv
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                ri = rows[i]
                for j in range(c, ncols):
                    if pr[j]:
                        ri[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form with zero rows removed, and the rank."""
    rows, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    return Matrix(tuple(tuple(r) for r in rows), m.ncols), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[1]


def solve(m: Matrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One exact solution of ``m x = b`` (free variables set to 0), or None."""
    if len(b) != m.nrows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    n = m.ncols
    aug = [list(r) + [frac(bi)] for r, bi in zip(m.rows, b)]
    rows, pivots = _rref_rows(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [ZERO] * n
    for row, c in zip(rows, pivots):
        x[c] = row[n]
    return tuple(x)


def nullspace(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    n = m.ncols
    rows, pivots = _rref_rows([list(r) for r in m.rows], n)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        x = [ZERO] * n
        x[f] = ONE
        for row, c in zip(rows, pivots):
            x[c] = -row[f]
        basis.append(tuple(x))
    return basis


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if m.ncols != n:
        raise DimensionError("inverse of a non-square matrix")
    aug = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(m.rows)]
    rows, pivots = _rref_rows(aug, 2 * n)
    if len(pivots) < n or pivots[-1] >= n:
        raise ZeroDivisionError("singular matrix")
    return Matrix(tuple(tuple(r[n:]) for r in rows), n)


def mat_vec(m: Matrix, v: Sequence) -> tuple[Fraction, ...]:
    return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in m.rows)


def vec_mat(v: Sequence, m: Matrix) -> tuple[Fraction, ...]:
    out = [ZERO] * m.ncols
    for a, row in zip(v, m.rows):
        if a:
            for j, b in enumerate(row):
                if b:
                    out[j] += a * b
    return tuple(out)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n held as its unique RREF basis.

    Two ``Subspace`` values compare equal exactly when they are the same space.
    """

    ambient_dim: int
    basis: Matrix
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append([frac(x) for x in v])
        red, pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, Matrix(tuple(tuple(r) for r in red), ambient_dim), tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix((), ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim), tuple(range(ambient_dim)))

    @classmethod
    def coordinate(cls, indices: Iterable[int], ambient_dim: int) -> "Subspace":
        """Span of the standard unit vectors at ``indices``."""
        idx = sorted(set(indices))
        return cls(ambient_dim, Matrix(tuple(unit_vec(ambient_dim, i) for i in idx), ambient_dim),
                   tuple(idx))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self) -> int:
        return self.dim

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return list(self.basis.rows)

    def _check(self, v: Sequence):
        if len(v) != self.ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")

    def reduce(self, v: Sequence) -> tuple[Fraction, ...]:
        """Remainder of ``v`` after clearing every pivot column."""
        self._check(v)
        w = [frac(x) for x in v]
        for row, c in zip(self.basis.rows, self.pivots):
            f = w[c]
            if f:
                for j in range(c, self.ambient_dim):
                    if row[j]:
                        w[j] -= f * row[j]
        return tuple(w)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Coefficients of ``v`` on the RREF basis rows, or None if outside."""
        if not self.contains(v):
            return None
        return tuple(frac(v[c]) for c in self.pivots)

    def issubspace(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionError("ambient dimension mismatch")
        return all(other.contains(r) for r in self.basis.rows)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return span_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersection(self, other)


def contains(s: Subspace, v: Sequence) -> bool:
    return s.contains(v)


def span_sum(s: Subspace, t: Subspace) -> Subspace:
    if s.ambient_dim != t.ambient_dim:
        raise DimensionError(f"ambient dimensions {s.ambient_dim} and {t.ambient_dim} differ")
    return Subspace.span(list(s.basis.rows) + list(t.basis.rows), s.ambient_dim)


def intersection(s: Subspace, t: Subspace) -> Subspace:
    """Zassenhaus: row-reduce [[s, s], [t, 0]]; rows with zero left half give s ∩ t."""
    if s.ambient_dim != t.ambient_dim:
        raise DimensionError(f"ambient dimensions {s.ambient_dim} and {t.ambient_dim} differ")
    n = s.ambient_dim
    z = zero_vec(n)
    rows = [list(r) + list(r) for r in s.basis.rows] + [list(r) + list(z) for r in t.basis.rows]
    red, pivots = _rref_rows(rows, 2 * n)
    out = [r[n:] for r, c in zip(red, pivots) if c >= n]
    return Subspace.span(out, n)


class CoordinateMap:
    """Coordinates with respect to a fixed list of independent vectors.

    Reduces ``[B | I]`` once; afterwards ``coords(v)`` is a single sparse
    vector-matrix product.
    """

    def __init__(self, basis: Sequence[Sequence], ambient_dim: int):
        k = len(basis)
        self.ambient_dim = ambient_dim
        self.size = k
        rows = [[frac(x) for x in b] + list(unit_vec(k, i)) for i, b in enumerate(basis)]
        red, pivots = _rref_rows(rows, ambient_dim + k)
        if len(pivots) != k or (pivots and pivots[-1] >= ambient_dim):
            raise ValueError("basis vectors are linearly dependent")
        self.pivots = tuple(pivots)
        self._echelon = [tuple(r[:ambient_dim]) for r in red]
        self._transform = [tuple(r[ambient_dim:]) for r in red]

    def coords(self, v: Sequence) -> tuple[Fraction, ...] | None:
        w = [frac(x) for x in v]
        out = [ZERO] * self.size
        for row, t, c in zip(self._echelon, self._transform, self.pivots):
            f = w[c]
            if f:
                for j in range(c, self.ambient_dim):
                    if row[j]:
                        w[j] -= f * row[j]
                for j, tj in enumerate(t):
                    if tj:
                        out[j] += f * tj
        if any(w):
            return None
        return tuple(out)

    def coords_sparse(self, v: dict[int, Fraction]) -> dict[int, Fraction] | None:
        c = self.coords([v.get(i, ZERO) for i in range(self.ambient_dim)])
        if c is None:
            return None
        return {i: x for i, x in enumerate(c) if x}


# ---------------------------------------------------------------------------
# fraction-free echelon for closure loops
# ---------------------------------------------------------------------------

def primitive(v: dict[int, int]) -> dict[int, int]:
    """Divide out the content and make the leading entry positive."""
    if not v:
        return v
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            break
    lead = v[min(v)]
    if lead < 0:
        g = -g
    if g == 1:
        return v
    return {k: x // g for k, x in v.items()}


def to_int_vector(v: Sequence) -> dict[int, int]:
    """Scale a rational vector to a primitive integer one (sparse)."""
    nz = {i: frac(x) for i, x in enumerate(v) if x}
    if not nz:
        return {}
    den = 1
    for x in nz.values():
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive({i: int(x * den) for i, x in nz.items()})


class IntEchelon:
    """Incremental row echelon form over Z (sparse rows, distinct leading columns).

    Each stored row is primitive with a positive leading entry; ``add`` reduces
    the candidate against existing rows in increasing pivot order.
    """

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self._rows: dict[int, dict[int, int]] = {}
        self._order: list[int] = []
        self._dirty = False

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _sorted_pivots(self) -> list[int]:
        if self._dirty:
            self._order.sort()
            self._dirty = False
        return self._order

    def reduce(self, v: dict[int, int]) -> dict[int, int]:
        v = dict(v)
        if not v:
            return v
        for p in self._sorted_pivots():
            a = v.get(p)
            if not a:
                continue
            row = self._rows[p]
            b = row[p]
            g = gcd(a, b)
            mb, ma = b // g, a // g
            if mb != 1:
                for k in v:
                    v[k] *= mb
            for k, x in row.items():
                y = v.get(k, 0) - ma * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
            if not v:
                return v
        return primitive(v)

    def add(self, v: dict[int, int]) -> dict[int, int] | None:
        """Insert ``v``; returns the stored reduced row, or None if ``v`` was in the span."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        self._rows[p] = r
        self._order.append(p)
        self._dirty = True
        return r

    def contains(self, v: dict[int, int]) -> bool:
        return not self.reduce(v)

    def rows(self) -> list[dict[int, int]]:
        return [self._rows[p] for p in self._sorted_pivots()]

    def to_subspace(self) -> Subspace:
        n = self.ambient_dim
        dense = []
        for r in self.rows():
            row = [ZERO] * n
            for k, x in r.items():
                row[k] = Fraction(x)
            dense.append(row)
        return Subspace.span(dense, n)
