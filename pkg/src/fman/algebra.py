"""F_man-algebras given by structure constants.

An algebra of dimension ``n`` carries a bracket ``[e_i, e_j] = sum_k c[i][j][k] e_k``
and a product ``e_i o e_j = sum_k s[i][j][k] e_k``.  Indices are 0-based in the
Python API; JSON files and reports use 1-based labels.

Every identity checked here is multilinear, so checking basis tuples is
complete.  Failures report the lexicographically first bad index tuple.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .exact import (
    ZERO,
    MatQ,
    SubspaceQ,
    Vector,
    DimensionError,
    is_zero_vec,
    rat,
    unit_vec,
    vec,
    vscale,
    vsum,
    vsub,
)


class StructureError(ValueError):
    """Structure constants break antisymmetry/symmetry at ``index`` (0-based i, j, k)."""

    def __init__(self, message: str, index: tuple):
        super().__init__(message)
        self.index = index


def _grid(n: int):
    return [[[ZERO] * n for _ in range(n)] for _ in range(n)]


def _freeze(g) -> tuple:
    return tuple(tuple(tuple(rat(x) for x in row) for row in plane) for plane in g)


@dataclass(frozen=True)
class AlgebraStructure:
    """Bracket and product constants, ``bracket[i][j][k] = c^k_ij``."""

    name: str
    dim: int
    bracket: tuple
    product: tuple

    def __post_init__(self):
        for label, g in (("bracket", self.bracket), ("product", self.product)):
            if len(g) != self.dim or any(len(p) != self.dim or any(len(r) != self.dim for r in p) for p in g):
                raise DimensionError(f"{label} grid is not {self.dim}x{self.dim}x{self.dim}")

    @classmethod
    def from_constants(cls, name: str, dim: int, bracket=None, product=None, check: bool = True) -> "AlgebraStructure":
        """Build from nested grids or sparse ``{(i, j): {k: value}}`` maps.

        Sparse maps are completed by antisymmetry (bracket) and symmetry
        (product).  ``check=False`` skips the invariant check; it exists so
        tests can feed deliberately broken constants to torsion and friends.
        """
        c = _from_spec(bracket, dim, sign=-1)
        s = _from_spec(product, dim, sign=1)
        alg = cls(name, dim, _freeze(c), _freeze(s))
        if check:
            alg.validate()
        return alg

    def validate(self):
        """Raise :class:`StructureError` unless c is antisymmetric and s symmetric."""
        n = self.dim
        for i, j, k in itertools.product(range(n), repeat=3):
            if self.bracket[i][j][k] != -self.bracket[j][i][k]:
                raise StructureError(f"bracket not antisymmetric at (i,j,k)=({i+1},{j+1},{k+1})", (i, j, k))
        for i, j, k in itertools.product(range(n), repeat=3):
            if self.product[i][j][k] != self.product[j][i][k]:
                raise StructureError(f"product not symmetric at (i,j,k)=({i+1},{j+1},{k+1})", (i, j, k))

    def basis(self, i: int) -> Vector:
        return unit_vec(self.dim, i)

    def br(self, u: Sequence, v: Sequence) -> Vector:
        return _bilinear(self.bracket, u, v, self.dim)

    def mul(self, u: Sequence, v: Sequence) -> Vector:
        return _bilinear(self.product, u, v, self.dim)

    def with_product(self, product, name: Optional[str] = None) -> "AlgebraStructure":
        return AlgebraStructure.from_constants(name or self.name, self.dim, self.bracket, product)


def _from_spec(spec, n: int, sign: int):
    g = _grid(n)
    if spec is None:
        return g
    if isinstance(spec, dict):
        for (i, j), out in spec.items():
            for k, x in out.items():
                g[i][j][k] = rat(x)
                g[j][i][k] = sign * rat(x) if i != j else rat(x)
        return g
    return [[[rat(x) for x in row] for row in plane] for plane in spec]


def _bilinear(consts, u, v, n) -> Vector:
    if len(u) != n or len(v) != n:
        raise DimensionError(f"expected vectors of length {n}")
    acc = [ZERO] * n
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            f = ui * vj
            row = consts[i][j]
            if f == 1:
                for k, x in enumerate(row):
                    if x:
                        acc[k] += x
                continue
            for k, x in enumerate(row):
                if x:
                    acc[k] += f * x
    return tuple(acc)


@dataclass(frozen=True)
class Tensor3:
    """Vector-valued trilinear map; ``values[i][j][k] = T(e_i, e_j, e_k)``."""

    dim: int
    values: tuple

    def __call__(self, i: int, j: int, k: int) -> Vector:
        return self.values[i][j][k]

    def evaluate(self, u, v, w) -> Vector:
        n = self.dim
        acc = [ZERO] * n
        for i in (i for i in range(n) if u[i]):
            for j in (j for j in range(n) if v[j]):
                uv = u[i] * v[j]
                for k in (k for k in range(n) if w[k]):
                    f = uv * w[k]
                    for m, x in enumerate(self.values[i][j][k]):
                        if x:
                            acc[m] += f * x
        return tuple(acc)

    def nonzero(self) -> list:
        n = self.dim
        return [
            ((i, j, k), self.values[i][j][k])
            for i, j, k in itertools.product(range(n), repeat=3)
            if not is_zero_vec(self.values[i][j][k])
        ]

    def is_zero(self) -> bool:
        return not self.nonzero()

    def endo(self, i: int, j: int) -> MatQ:
        """Endomorphism w -> T(e_i, e_j, w)."""
        return MatQ.from_columns([self.values[i][j][k] for k in range(self.dim)], self.dim)


@dataclass(frozen=True)
class Tensor4:
    """Vector-valued 4-linear map; ``values[i][j][k][l] = T(e_i, e_j, e_k, e_l)``."""

    dim: int
    values: tuple

    def __call__(self, i: int, j: int, k: int, l: int) -> Vector:
        return self.values[i][j][k][l]

    def nonzero(self) -> list:
        n = self.dim
        return [
            ((i, j, k, l), self.values[i][j][k][l])
            for i, j, k, l in itertools.product(range(n), repeat=4)
            if not is_zero_vec(self.values[i][j][k][l])
        ]

    def is_zero(self) -> bool:
        return not self.nonzero()


@dataclass(frozen=True)
class Verdict:
    """Outcome of one axiom check; ``witness`` is 0-based, ``residual`` the nonzero defect."""

    ok: bool
    witness: Optional[tuple] = None
    residual: Optional[Vector] = None

    def __bool__(self):
        return self.ok


def check_lie_axioms(a: AlgebraStructure) -> Verdict:
    """Jacobi identity on all basis triples (antisymmetry is a type invariant)."""
    n = a.dim
    e = [a.basis(i) for i in range(n)]
    c = a.bracket
    for i, j, k in itertools.product(range(n), repeat=3):
        res = a.br(c[i][j], e[k])
        res = tuple(x + y + z for x, y, z in zip(res, a.br(c[j][k], e[i]), a.br(c[k][i], e[j])))
        if not is_zero_vec(res):
            return Verdict(False, (i, j, k), res)
    return Verdict(True)


def check_comm_assoc(a: AlgebraStructure) -> Verdict:
    """Associativity on all basis triples (commutativity is a type invariant)."""
    n = a.dim
    e = [a.basis(i) for i in range(n)]
    p = a.product
    for i, j, k in itertools.product(range(n), repeat=3):
        res = vsub(a.mul(p[i][j], e[k]), a.mul(e[i], p[j][k]))
        if not is_zero_vec(res):
            return Verdict(False, (i, j, k), res)
    return Verdict(True)


def leibnizator_value(a: AlgebraStructure, u, v, w) -> Vector:
    """L(u, v, w) = [u, v o w] - [u, v] o w - v o [u, w]."""
    t1 = a.br(u, a.mul(v, w))
    t2 = a.mul(a.br(u, v), w)
    t3 = a.mul(v, a.br(u, w))
    return tuple(x - y - z for x, y, z in zip(t1, t2, t3))


def leibnizator(a: AlgebraStructure) -> Tensor3:
    n = a.dim
    e = [a.basis(i) for i in range(n)]
    c, s = a.bracket, a.product

    def value(i, j, k):
        t1 = a.br(e[i], s[j][k])
        t2 = a.mul(c[i][j], e[k])
        t3 = a.mul(e[j], c[i][k])
        return tuple(x - y - z for x, y, z in zip(t1, t2, t3))

    return Tensor3(n, tuple(tuple(tuple(value(i, j, k) for k in range(n)) for j in range(n)) for i in range(n)))


def hm_tensor(a: AlgebraStructure, L: Optional[Tensor3] = None) -> Tensor4:
    """N(X,Y,Z,W) = L(X o Y, Z, W) - L(X, Z, W) o Y - X o L(Y, Z, W) on basis quadruples.

    The first slot of ``L`` is fed ``e_i o e_j`` through trilinearity of the
    component tensor, not by recomputing brackets.
    """
    n = a.dim
    L = L or leibnizator(a)
    e = [a.basis(i) for i in range(n)]
    vals = []
    for i in range(n):
        plane = []
        for j in range(n):
            xy = a.product[i][j]
            block = []
            for k in range(n):
                row = []
                for l in range(n):
                    first = vsum((vscale(c, L(m, k, l)) for m, c in enumerate(xy) if c), n)
                    second = a.mul(L(i, k, l), e[j])
                    third = a.mul(e[i], L(j, k, l))
                    row.append(tuple(p - q - r for p, q, r in zip(first, second, third)))
                block.append(tuple(row))
            plane.append(tuple(block))
        vals.append(tuple(plane))
    return Tensor4(n, tuple(vals))


def check_hm(a: AlgebraStructure) -> Verdict:
    nz = hm_tensor(a).nonzero()
    if nz:
        idx, res = nz[0]
        return Verdict(False, idx, res)
    return Verdict(True)


@dataclass(frozen=True)
class FmanVerdict:
    lie: Verdict
    comm_assoc: Verdict
    hm: Verdict

    @property
    def ok(self) -> bool:
        return self.lie.ok and self.comm_assoc.ok and self.hm.ok

    def __bool__(self):
        return self.ok

    def first_failure(self) -> Optional[str]:
        for name in ("lie", "comm_assoc", "hm"):
            if not getattr(self, name).ok:
                return name
        return None


def is_fman(a: AlgebraStructure) -> FmanVerdict:
    return FmanVerdict(check_lie_axioms(a), check_comm_assoc(a), check_hm(a))


def is_poisson(a: AlgebraStructure) -> bool:
    return leibnizator(a).is_zero()


def ad(a: AlgebraStructure, u: Sequence) -> MatQ:
    """Matrix of v -> [u, v]."""
    u = vec(u)
    if len(u) != a.dim:
        raise DimensionError(f"vector of length {len(u)} in a {a.dim}-dimensional algebra")
    return MatQ.from_columns([a.br(u, a.basis(j)) for j in range(a.dim)], a.dim)


def s_endo(a: AlgebraStructure, u: Sequence) -> MatQ:
    """Matrix of v -> u o v."""
    u = vec(u)
    if len(u) != a.dim:
        raise DimensionError(f"vector of length {len(u)} in a {a.dim}-dimensional algebra")
    return MatQ.from_columns([a.mul(u, a.basis(j)) for j in range(a.dim)], a.dim)


def leibnizator_endo(a: AlgebraStructure, u: Sequence, v: Sequence) -> MatQ:
    """L(u, v) as the endomorphism w -> L(u, v, w)."""
    return MatQ.from_columns([leibnizator_value(a, u, v, a.basis(k)) for k in range(a.dim)], a.dim)


def derived_algebra(a: AlgebraStructure):
    """[g, g] as a canonical subspace."""
    n = a.dim
    return SubspaceQ.span([a.br(a.basis(i), a.basis(j)) for i in range(n) for j in range(i + 1, n)], n)
