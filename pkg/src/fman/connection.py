"""Canonical left-invariant connection A_u = 1/2 ad_u + S_u and its curvature.

Curvature is available two ways: straight from the connection as
``[A_u, A_v] - A_[u,v]``, and from the bracket/Leibnizator split
``-1/4 ad_[u,v] + 1/2 (L(u,v) - L(v,u))``.  The two agree whenever the
bracket is a Lie bracket and the product is commutative and associative.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import AlgebraStructure, Tensor3, ad, leibnizator, s_endo
from .exact import MatQ, Vector, is_zero_vec

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def a_endo(a: AlgebraStructure, u) -> MatQ:
    return ad(a, u).scale(HALF) + s_endo(a, u)


def torsion(a: AlgebraStructure) -> Tensor3:
    """T(e_i, e_j) = A_{e_i} e_j - A_{e_j} e_i - [e_i, e_j], stored as a Tensor3 with a dummy last slot.

    ``values[i][j][0]`` holds T(e_i, e_j); the remaining slots are zero so
    the result reuses :class:`Tensor3` helpers.
    """
    n = a.dim
    A = [a_endo(a, a.basis(i)) for i in range(n)]
    zero = (Fraction(0),) * n
    vals = []
    for i in range(n):
        plane = []
        for j in range(n):
            t = tuple(
                x - y - z
                for x, y, z in zip(A[i].column(j), A[j].column(i), a.br(a.basis(i), a.basis(j)))
            )
            plane.append((t,) + (zero,) * (n - 1))
        vals.append(tuple(plane))
    return Tensor3(n, tuple(vals))


@dataclass(frozen=True)
class CurvatureReport:
    """Curvature endomorphisms R(e_i, e_j) for i < j.

    ``r0`` and ``rl`` are the bracket and Leibnizator parts; they are None
    when the report came from the commutator formula alone.
    """

    dim: int
    r_total: dict
    r0: Optional[dict] = None
    rl: Optional[dict] = None

    @property
    def is_flat(self) -> bool:
        return all(m.is_zero() for m in self.r_total.values())

    def pairs(self):
        return sorted(self.r_total)

    def endo(self, i: int, j: int) -> MatQ:
        """R(e_i, e_j) for any i, j via antisymmetry."""
        if i == j:
            return MatQ.zeros(self.dim)
        if i < j:
            return self.r_total[(i, j)]
        return -self.r_total[(j, i)]

    def evaluate(self, u, v) -> MatQ:
        """R(u, v) by bilinearity over the stored basis pairs."""
        out = MatQ.zeros(self.dim)
        for (i, j), m in self.r_total.items():
            c = u[i] * v[j] - u[j] * v[i]
            if c:
                out = out + m.scale(c)
        return out

    def same_total(self, other: "CurvatureReport") -> bool:
        return self.r_total == other.r_total


def curvature_commutator(a: AlgebraStructure) -> CurvatureReport:
    n = a.dim
    A = [a_endo(a, a.basis(i)) for i in range(n)]
    r = {}
    for i, j in itertools.combinations(range(n), 2):
        r[(i, j)] = A[i].commutator(A[j]) - a_endo(a, a.br(a.basis(i), a.basis(j)))
    return CurvatureReport(n, r)


def curvature_split(a: AlgebraStructure, L: Optional[Tensor3] = None) -> CurvatureReport:
    n = a.dim
    L = L or leibnizator(a)
    r0, rl, rt = {}, {}, {}
    for i, j in itertools.combinations(range(n), 2):
        r0[(i, j)] = ad(a, a.br(a.basis(i), a.basis(j))).scale(-QUARTER)
        rl[(i, j)] = (L.endo(i, j) - L.endo(j, i)).scale(HALF)
        rt[(i, j)] = r0[(i, j)] + rl[(i, j)]
    return CurvatureReport(n, rt, r0, rl)


def bianchi_defect(r: CurvatureReport) -> Optional[tuple]:
    """First (i, j, k, residual) where R(e_i,e_j)e_k + cyclic does not vanish."""
    n = r.dim
    for i, j, k in itertools.product(range(n), repeat=3):
        s = tuple(
            x + y + z
            for x, y, z in zip(r.endo(i, j).column(k), r.endo(j, k).column(i), r.endo(k, i).column(j))
        )
        if not is_zero_vec(s):
            return (i, j, k, s)
    return None


def curvature_rank_profile(r: CurvatureReport) -> dict:
    """Rank of each nonzero R(e_i, e_j)."""
    from .exact import rank

    return {p: rank(m) for p, m in r.r_total.items() if not m.is_zero()}
