"""Holonomy algebra of a left-invariant connection by commutator closure.

Endomorphisms of Q^n are flattened row-major into Q^(n^2) so that spans,
sums and membership reuse the canonical subspace machinery.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .algebra import AlgebraStructure, Tensor3, ad, derived_algebra, leibnizator
from .connection import CurvatureReport, a_endo, curvature_split
from .exact import MatQ, SubspaceQ, DimensionError, subspace_contains


@dataclass(frozen=True)
class EndoSubalgebra:
    dim: int
    subspace: SubspaceQ
    generators_log: tuple = field(default=(), compare=False)
    rounds: int = field(default=0, compare=False)

    @property
    def rank(self) -> int:
        return self.subspace.rank

    def matrices(self) -> list:
        return [MatQ.unflatten(v, self.dim) for v in self.subspace.vectors]

    def contains(self, m: MatQ) -> bool:
        return subspace_contains(self.subspace, m.flatten())


def span_endos(endos: Iterable[MatQ], n: int) -> SubspaceQ:
    return SubspaceQ.span([m.flatten() for m in endos], n * n)


def closure(a: AlgebraStructure, generators: Iterable[MatQ], log: Optional[list] = None) -> EndoSubalgebra:
    """Smallest subspace containing ``generators``, closed under [A_{e_k}, .] and under commutators.

    Runs in breadth-first rounds: every A-commutator of the current basis,
    then every mutual commutator, then one re-reduction.  Rank rises each
    round that changes anything, so at most n^2 productive rounds occur.
    """
    n = a.dim
    A = [a_endo(a, a.basis(k)) for k in range(n)]
    log = [] if log is None else log
    current = span_endos(generators, n)
    rounds = 0
    while True:
        basis = [MatQ.unflatten(v, n) for v in current.vectors]
        candidates = []
        for k, X in itertools.product(range(n), basis):
            candidates.append(A[k].commutator(X))
        for X, Y in itertools.combinations(basis, 2):
            candidates.append(X.commutator(Y))
        grown = SubspaceQ.span(current.vectors + tuple(c.flatten() for c in candidates), n * n)
        if grown.rank == current.rank:
            break
        rounds += 1
        log.append(f"round {rounds}: rank {current.rank} -> {grown.rank}")
        current = grown
    if rounds > n * n:
        raise AssertionError(f"closure took {rounds} rounds for n={n}")
    return EndoSubalgebra(n, current, tuple(log), rounds)


def holonomy_algebra(a: AlgebraStructure, r: Optional[CurvatureReport] = None) -> EndoSubalgebra:
    r = r or curvature_split(a)
    gens = [r.r_total[p] for p in r.pairs()]
    log = [f"curvature R(e{i + 1},e{j + 1})" for i, j in r.pairs() if not r.r_total[(i, j)].is_zero()]
    return closure(a, gens, log)


def poisson_holonomy(a: AlgebraStructure) -> EndoSubalgebra:
    """ad_[g,g] + A_[g,[g,g]] built with the algebra's own product."""
    n = a.dim
    gg = derived_algebra(a)
    ggg = SubspaceQ.span([a.br(a.basis(i), w) for i in range(n) for w in gg.vectors], n)
    gens = [ad(a, w) for w in gg.vectors] + [a_endo(a, w) for w in ggg.vectors]
    log = [f"ad over [g,g] (dim {gg.rank})", f"A over [g,[g,g]] (dim {ggg.rank})"]
    return EndoSubalgebra(n, span_endos(gens, n), tuple(log))


def leibnizator_span(a: AlgebraStructure, L: Optional[Tensor3] = None) -> EndoSubalgebra:
    """span{L(e_i, e_j)} as endomorphisms w -> L(e_i, e_j, w)."""
    n = a.dim
    L = L or leibnizator(a)
    return EndoSubalgebra(n, span_endos((L.endo(i, j) for i in range(n) for j in range(n)), n), ("L(g,g)",))


def extended_poisson_holonomy(a: AlgebraStructure, L: Optional[Tensor3] = None) -> EndoSubalgebra:
    p = poisson_holonomy(a)
    l = leibnizator_span(a, L)
    return EndoSubalgebra(a.dim, p.subspace + l.subspace, p.generators_log + l.generators_log)


@dataclass(frozen=True)
class InclusionVerdict:
    ok: bool
    witness: Optional[MatQ] = None

    def __bool__(self):
        return self.ok


def check_inclusion(p: EndoSubalgebra, h: EndoSubalgebra) -> InclusionVerdict:
    if p.subspace.ambient_dim != h.subspace.ambient_dim:
        raise DimensionError("endomorphism algebras over different dimensions")
    for v in p.subspace.vectors:
        if not subspace_contains(h.subspace, v):
            return InclusionVerdict(False, MatQ.unflatten(v, p.dim))
    return InclusionVerdict(True)


@dataclass(frozen=True)
class HolonomyDiagnostics:
    dim: int
    abelian: bool
    nilpotent_generators: bool


def holonomy_diagnostics(h: EndoSubalgebra) -> HolonomyDiagnostics:
    mats = h.matrices()
    abelian = all(X.commutator(Y).is_zero() for X, Y in itertools.combinations(mats, 2))
    nilpotent = all(X.power(h.dim).is_zero() for X in mats)
    return HolonomyDiagnostics(h.rank, abelian, nilpotent)
