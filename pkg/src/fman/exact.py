"""Exact rational scalars, dense matrices and canonical subspaces.

Scalars are :class:`fractions.Fraction`; Python integers are unbounded, so
nothing here ever rounds.  Matrices are immutable row-major grids and
subspaces are stored by their reduced row echelon basis, which makes
subspace equality plain equality of the basis grids.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    """Raised when operands live in spaces of different dimension."""


def rat(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are refused: they carry binary rounding that would leak into
    every downstream rank computation.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def rat_str(x: Fraction) -> str:
    return str(x)


def vec(values: Iterable) -> Vector:
    return tuple(rat(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths {len(u)} and {len(v)} differ")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths {len(u)} and {len(v)} differ")
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Sequence) -> Vector:
    c = rat(c)
    return tuple(c * a for a in u)


def vsum(vectors: Iterable[Sequence], n: int) -> Vector:
    acc = [ZERO] * n
    for v in vectors:
        for k, a in enumerate(v):
            if a:
                acc[k] += a
    return tuple(acc)


def is_zero_vec(u: Sequence) -> bool:
    return not any(u)


@dataclass(frozen=True)
class MatQ:
    """Immutable rational matrix, stored row-major.

    When used as an endomorphism, column ``j`` holds the image of ``e_j``.
    """

    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "MatQ":
        grid = tuple(vec(r) for r in rows)
        if cols is None:
            if not grid:
                raise DimensionError("column count needed for an empty matrix")
            cols = len(grid[0])
        return cls(len(grid), cols, grid)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "MatQ":
        cols = [vec(c) for c in columns]
        if rows is None:
            rows = len(cols[0])
        return cls(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "MatQ":
        cols = rows if cols is None else cols
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "MatQ":
        return cls(n, n, tuple(unit_vec(n, i) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    @property
    def T(self) -> "MatQ":
        return MatQ(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def _check_same(self, other: "MatQ"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(f"shapes {self.rows}x{self.cols} and {other.rows}x{other.cols} differ")

    def __add__(self, other: "MatQ") -> "MatQ":
        self._check_same(other)
        return MatQ(self.rows, self.cols, tuple(vadd(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "MatQ") -> "MatQ":
        self._check_same(other)
        return MatQ(self.rows, self.cols, tuple(vsub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "MatQ":
        return self.scale(-1)

    def scale(self, c) -> "MatQ":
        return MatQ(self.rows, self.cols, tuple(vscale(c, r) for r in self.entries))

    def __matmul__(self, other):
        if isinstance(other, MatQ):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            ocols = other.T.entries
            return MatQ(
                self.rows,
                other.cols,
                tuple(tuple(_dot(r, c) for c in ocols) for r in self.entries),
            )
        v = vec(other)
        if len(v) != self.cols:
            raise DimensionError(f"cannot apply {self.rows}x{self.cols} matrix to length-{len(v)} vector")
        return tuple(_dot(r, v) for r in self.entries)

    def apply(self, v: Sequence) -> Vector:
        return self @ v

    def commutator(self, other: "MatQ") -> "MatQ":
        return self @ other - other @ self

    def power(self, k: int) -> "MatQ":
        out = MatQ.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def flatten(self) -> Vector:
        """Row-major flattening into Q^(rows*cols)."""
        return tuple(a for r in self.entries for a in r)

    @classmethod
    def unflatten(cls, v: Sequence, n: int) -> "MatQ":
        v = vec(v)
        if len(v) != n * n:
            raise DimensionError(f"length {len(v)} is not {n}^2")
        return cls(n, n, tuple(v[i * n:(i + 1) * n] for i in range(n)))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def tolist(self) -> list:
        return [list(r) for r in self.entries]


def _dot(u, v):
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def _rref_rows(rows: Sequence[Sequence], cols: int):
    """Gauss-Jordan elimination; returns (nonzero rref rows, pivot columns)."""
    m = [list(vec(r)) for r in rows]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rref(m: MatQ) -> MatQ:
    """Reduced row echelon form with zero rows dropped."""
    rows, _ = _rref_rows(m.entries, m.cols)
    return MatQ(len(rows), m.cols, rows)


def rank(m: MatQ) -> int:
    return len(_rref_rows(m.entries, m.cols)[1])


@dataclass(frozen=True)
class SubspaceQ:
    """A subspace of Q^ambient_dim, held by its RREF basis."""

    ambient_dim: int
    basis: MatQ

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise DimensionError("basis width differs from the ambient dimension")

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "SubspaceQ":
        vs = [vec(v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in Q^{ambient_dim}")
        rows, _ = _rref_rows(vs, ambient_dim)
        return cls(ambient_dim, MatQ(len(rows), ambient_dim, rows))

    @classmethod
    def zero(cls, ambient_dim: int) -> "SubspaceQ":
        return cls(ambient_dim, MatQ.zeros(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "SubspaceQ":
        return cls(ambient_dim, MatQ.identity(ambient_dim))

    @property
    def rank(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> tuple:
        return self.basis.entries

    def __contains__(self, v) -> bool:
        return subspace_contains(self, v)

    def __add__(self, other: "SubspaceQ") -> "SubspaceQ":
        return subspace_sum(self, other)

    def issubset(self, other: "SubspaceQ") -> bool:
        return all(subspace_contains(other, v) for v in self.vectors)


def kernel(m: MatQ) -> SubspaceQ:
    """Null space {x : m x = 0} as a canonical subspace of Q^cols."""
    rows, pivots = _rref_rows(m.entries, m.cols)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * m.cols
        x[f] = ONE
        for row, p in zip(rows, pivots):
            x[p] = -row[f]
        basis.append(x)
    return SubspaceQ.span(basis, m.cols)


def subspace_sum(a: SubspaceQ, b: SubspaceQ) -> SubspaceQ:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")
    return SubspaceQ.span(a.vectors + b.vectors, a.ambient_dim)


def subspace_contains(a: SubspaceQ, v: Sequence) -> bool:
    """Membership by exact residual after reduction against the RREF basis."""
    v = vec(v)
    if len(v) != a.ambient_dim:
        raise DimensionError(f"vector of length {len(v)} tested against Q^{a.ambient_dim}")
    residual = list(v)
    for row in a.vectors:
        p = next(i for i, x in enumerate(row) if x)
        f = residual[p]
        if f:
            residual = [r - f * x for r, x in zip(residual, row)]
    return not any(residual)
