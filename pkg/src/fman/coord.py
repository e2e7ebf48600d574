"""F-manifold computations in a polynomial chart.

A chart carries a symmetric (1,2)-tensor ``S`` with polynomial components
``S[i][j][k] = S^k_ij(x)``; vector fields are tuples of polynomials.  All
results are exact.  Solutions of the Lie-derivative system are only searched
among polynomial fields of bounded degree and are global on the chart, so
they span a subspace of the true local solution space at each point.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import AlgebraStructure
from .exact import MatQ, SubspaceQ, kernel, rank
from .poly import Poly, grlex_key, monomials_up_to


@dataclass(frozen=True)
class PolyFManifold:
    nvars: int
    s: tuple  # s[i][j][k] = S^k_ij

    def __post_init__(self):
        n = self.nvars
        for i, j, k in itertools.product(range(n), repeat=3):
            p = self.s[i][j][k]
            if p.nvars != n:
                raise ValueError(f"S^{k + 1}_{i + 1}{j + 1} has {p.nvars} variables, expected {n}")
            if p != self.s[j][i][k]:
                raise ValueError(f"S not symmetric at (i,j,k)=({i + 1},{j + 1},{k + 1})")

    @classmethod
    def from_components(cls, nvars: int, comps: dict) -> "PolyFManifold":
        """``comps`` maps 0-based (i, j, k) to a Poly; (j, i, k) is filled in by symmetry."""
        g = [[[Poly.zero(nvars) for _ in range(nvars)] for _ in range(nvars)] for _ in range(nvars)]
        for (i, j, k), p in comps.items():
            if (j, i, k) in comps and (i != j) and comps[(j, i, k)] != p:
                raise ValueError(f"S not symmetric at (i,j,k)=({i + 1},{j + 1},{k + 1})")
            g[i][j][k] = p
            g[j][i][k] = p
        return cls(nvars, tuple(tuple(tuple(r) for r in plane) for plane in g))

    @classmethod
    def from_algebra(cls, a: AlgebraStructure) -> "PolyFManifold":
        """Constant-coefficient chart with the algebra's product (its bracket is not used)."""
        n = a.dim
        return cls(
            n,
            tuple(tuple(tuple(Poly.const(n, a.product[i][j][k]) for k in range(n)) for j in range(n)) for i in range(n)),
        )

    def field(self, comps: Sequence) -> tuple:
        out = tuple(c if isinstance(c, Poly) else Poly.const(self.nvars, c) for c in comps)
        if len(out) != self.nvars:
            raise ValueError(f"vector field with {len(out)} components on a {self.nvars}-dimensional chart")
        return out

    def coordinate_field(self, i: int) -> tuple:
        return self.field([1 if k == i else 0 for k in range(self.nvars)])

    def depends_on(self, l: int) -> bool:
        return any(not p.diff(l).is_zero() for p in self._components())

    def _components(self):
        n = self.nvars
        return (self.s[i][j][k] for i, j, k in itertools.product(range(n), repeat=3))


def _check(m: PolyFManifold, *fields):
    for f in fields:
        if len(f) != m.nvars or any(p.nvars != m.nvars for p in f):
            raise ValueError(f"vector field does not live on the {m.nvars}-variable chart")


def field_bracket(x: Sequence[Poly], y: Sequence[Poly]) -> tuple:
    """[X, Y]^k = sum_l X^l d_l Y^k - Y^l d_l X^k."""
    n = len(x)
    zero = Poly.zero(x[0].nvars)
    out = []
    for k in range(n):
        acc = zero
        for l in range(n):
            acc = acc + x[l] * y[k].diff(l) - y[l] * x[k].diff(l)
        out.append(acc)
    return tuple(out)


def field_product(m: PolyFManifold, x: Sequence[Poly], y: Sequence[Poly]) -> tuple:
    """(X o Y)^k = sum_ij S^k_ij X^i Y^j."""
    n = m.nvars
    out = [Poly.zero(n) for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        xy = x[i] * y[j]
        if xy.is_zero():
            continue
        for k in range(n):
            if m.s[i][j][k]:
                out[k] = out[k] + m.s[i][j][k] * xy
    return tuple(out)


def field_sub(*fields) -> tuple:
    first, *rest = fields
    out = list(first)
    for f in rest:
        out = [a - b for a, b in zip(out, f)]
    return tuple(out)


def lie_derivative_S(m: PolyFManifold, x: Sequence[Poly]) -> tuple:
    """(L_X S)^k_ij as a grid ``out[i][j][k]``, computed from the coordinate formula."""
    _check(m, x)
    n = m.nvars
    dx = [[x[k].diff(l) for l in range(n)] for k in range(n)]  # dx[k][l] = d_l X^k
    out = []
    for i in range(n):
        plane = []
        for j in range(n):
            row = []
            for k in range(n):
                acc = Poly.zero(n)
                for l in range(n):
                    acc = acc + x[l] * m.s[i][j][k].diff(l)
                    acc = acc - m.s[i][j][l] * dx[k][l]
                    acc = acc + m.s[l][j][k] * dx[l][i]
                    acc = acc + m.s[i][l][k] * dx[l][j]
                row.append(acc)
            plane.append(tuple(row))
        out.append(tuple(plane))
    return tuple(out)


def contract(t: tuple, y: Sequence[Poly], z: Sequence[Poly]) -> tuple:
    """T(Y, Z)^k = sum_ij T^k_ij Y^i Z^j for a (1,2) grid ``t[i][j][k]``."""
    n = len(y)
    out = [Poly.zero(y[0].nvars) for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        yz = y[i] * z[j]
        if yz.is_zero():
            continue
        for k in range(n):
            out[k] = out[k] + t[i][j][k] * yz
    return tuple(out)


def leibnizator_fields(m: PolyFManifold, x, y, z) -> tuple:
    """L(X, Y, Z) = [X, Y o Z] - [X, Y] o Z - Y o [X, Z] via field brackets and the S-product."""
    _check(m, x, y, z)
    return field_sub(
        field_bracket(x, field_product(m, y, z)),
        field_product(m, field_bracket(x, y), z),
        field_product(m, y, field_bracket(x, z)),
    )


@dataclass(frozen=True)
class HMFieldVerdict:
    """``witness`` is (i, j, a, b, k, poly): the first nonzero N^k(d_i, d_j, d_a, d_b), 0-based."""

    zero: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.zero


def hm_tensor_component(m: PolyFManifold, i: int, j: int, a: int, b: int) -> tuple:
    """N(d_i, d_j, d_a, d_b) = L(d_i o d_j, d_a, d_b) - L(d_i, d_a, d_b) o d_j - d_i o L(d_j, d_a, d_b)."""
    d = [m.coordinate_field(q) for q in range(m.nvars)]
    return field_sub(
        leibnizator_fields(m, field_product(m, d[i], d[j]), d[a], d[b]),
        field_product(m, leibnizator_fields(m, d[i], d[a], d[b]), d[j]),
        field_product(m, d[i], leibnizator_fields(m, d[j], d[a], d[b])),
    )


def hm_tensor_component_lie(m: PolyFManifold, i: int, j: int, a: int, b: int) -> tuple:
    """Same component written as (L_{S(X,Y)} S)(Z,W) - X o (L_Y S)(Z,W) - Y o (L_X S)(Z,W)."""
    d = [m.coordinate_field(q) for q in range(m.nvars)]
    xy = field_product(m, d[i], d[j])
    return field_sub(
        contract(lie_derivative_S(m, xy), d[a], d[b]),
        field_product(m, d[i], contract(lie_derivative_S(m, d[j]), d[a], d[b])),
        field_product(m, d[j], contract(lie_derivative_S(m, d[i]), d[a], d[b])),
    )


def hm_tensor_field(m: PolyFManifold) -> HMFieldVerdict:
    n = m.nvars
    for i, j, a, b in itertools.product(range(n), repeat=4):
        comp = hm_tensor_component(m, i, j, a, b)
        for k, p in enumerate(comp):
            if not p.is_zero():
                return HMFieldVerdict(False, (i, j, a, b, k, p))
    return HMFieldVerdict(True)


@dataclass(frozen=True)
class DpoisSystem:
    """Linear system for L_X S = 0 under a polynomial ansatz.

    Unknowns are coefficients of ``x^alpha`` in ``X^r``, ordered by r then
    graded lex ``alpha``; rows are (i, j, k, monomial) in the same orders.
    """

    matrix: MatQ
    unknowns: tuple  # (r, alpha)
    rows: tuple  # (i, j, k, monomial)


def assemble_dpois_system(m: PolyFManifold, degree_bound: int) -> DpoisSystem:
    """Expand the first-order system monomial by monomial.

    Each unknown contributes (d_r S^k_ij) x^alpha plus
    sum_q (-S^q_ij delta^k_r + S^k_rj delta^q_i + S^k_ir delta^q_j) d_q x^alpha.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be non-negative")
    n = m.nvars
    monos = monomials_up_to(n, degree_bound)
    unknowns = [(r, alpha) for r in range(n) for alpha in monos]
    columns = []
    for r, alpha in unknowns:
        xa = Poly.monomial(alpha)
        dxa = [xa.diff(q) for q in range(n)]
        col = {}
        for i, j, k in itertools.product(range(n), repeat=3):
            p = m.s[i][j][k].diff(r) * xa
            for q in range(n):
                coef = Poly.zero(n)
                if k == r:
                    coef = coef - m.s[i][j][q]
                if q == i:
                    coef = coef + m.s[r][j][k]
                if q == j:
                    coef = coef + m.s[i][r][k]
                if coef and dxa[q]:
                    p = p + coef * dxa[q]
            for e, c in p.terms.items():
                col[(i, j, k, e)] = c
        columns.append(col)
    row_keys = sorted({key for col in columns for key in col}, key=lambda t: (t[0], t[1], t[2], grlex_key(t[3])))
    grid = tuple(tuple(col.get(key, 0) for col in columns) for key in row_keys)
    mat = MatQ.from_rows(grid, cols=len(unknowns)) if grid else MatQ.zeros(0, len(unknowns))
    return DpoisSystem(mat, tuple(unknowns), tuple(row_keys))


def field_from_coefficients(nvars: int, unknowns: Sequence, coeffs: Sequence) -> tuple:
    comps = [dict() for _ in range(nvars)]
    for (r, alpha), c in zip(unknowns, coeffs):
        if c:
            comps[r][alpha] = c
    return tuple(Poly(nvars, comps[r]) for r in range(nvars))


def solve_dpois_ansatz(m: PolyFManifold, degree_bound: int) -> list:
    """Basis (RREF in the unknown coordinates) of polynomial fields X, deg <= bound, with L_X S = 0."""
    system = assemble_dpois_system(m, degree_bound)
    sol = kernel(system.matrix)
    return [field_from_coefficients(m.nvars, system.unknowns, v) for v in sol.vectors]


def span_at(fields: Sequence, point: Sequence) -> SubspaceQ:
    """Span of the given fields evaluated at a rational point."""
    n = len(point)
    return SubspaceQ.span([[p(point) for p in f] for f in fields], n)


def rank_at(fields: Sequence, point: Sequence) -> int:
    if not fields:
        return 0
    return rank(MatQ.from_rows([[p(point) for p in f] for f in fields]))


@dataclass(frozen=True)
class SplittingVerdict:
    """Both checks over ``leaf_vars``; witnesses are (l, i, j, k, poly), 0-based."""

    leaf_derivatives_zero: bool
    leaf_fields_kill_S: bool
    derivative_witness: Optional[tuple] = None
    lie_witness: Optional[tuple] = None

    @property
    def coherent(self) -> bool:
        return self.leaf_derivatives_zero == self.leaf_fields_kill_S


def splitting_check(m: PolyFManifold, leaf_vars: Sequence[int]) -> SplittingVerdict:
    n = m.nvars
    for l in leaf_vars:
        if not 0 <= l < n:
            raise ValueError(f"leaf variable {l} outside 0..{n - 1}")
    d_wit = None
    for l in leaf_vars:
        for i, j, k in itertools.product(range(n), repeat=3):
            p = m.s[i][j][k].diff(l)
            if p:
                d_wit = (l, i, j, k, p)
                break
        if d_wit:
            break
    l_wit = None
    for l in leaf_vars:
        lie = lie_derivative_S(m, m.coordinate_field(l))
        for i, j, k in itertools.product(range(n), repeat=3):
            if lie[i][j][k]:
                l_wit = (l, i, j, k, lie[i][j][k])
                break
        if l_wit:
            break
    return SplittingVerdict(d_wit is None, l_wit is None, d_wit, l_wit)
