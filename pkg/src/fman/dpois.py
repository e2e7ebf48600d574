"""Poisson-algebra distribution of an F-Lie group, read off at the identity.

The fiber is the kernel of u -> L(u, ., .).  Everything is left-invariant,
so the identity fiber determines the whole distribution.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .algebra import AlgebraStructure, Tensor3, leibnizator
from .connection import a_endo
from .exact import MatQ, SubspaceQ, kernel


@dataclass(frozen=True)
class DpoisFiber:
    subspace: SubspaceQ

    @property
    def rank(self) -> int:
        return self.subspace.rank

    @property
    def basis(self) -> tuple:
        return self.subspace.vectors


def leibnizator_matrix(a: AlgebraStructure, L: Optional[Tensor3] = None) -> MatQ:
    """The n^3 x n matrix of u -> (L(u, e_j, e_k))_{j,k}; rows ordered (j, k, m) lexicographically."""
    n = a.dim
    L = L or leibnizator(a)
    rows = []
    for j, k, m in itertools.product(range(n), repeat=3):
        rows.append(tuple(L(i, j, k)[m] for i in range(n)))
    return MatQ(len(rows), n, tuple(rows))


def dpois_fiber(a: AlgebraStructure, L: Optional[Tensor3] = None) -> DpoisFiber:
    return DpoisFiber(kernel(leibnizator_matrix(a, L)))


@dataclass(frozen=True)
class ClosureVerdict:
    """Each ``*_witness`` is (u, v, image) for the first basis pair whose image escapes the fiber."""

    bracket_closed: bool
    circ_closed: bool
    autoparallel: bool
    bracket_witness: Optional[tuple] = None
    circ_witness: Optional[tuple] = None
    autoparallel_witness: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return self.bracket_closed and self.circ_closed and self.autoparallel


def check_dpois_closures(a: AlgebraStructure, f: DpoisFiber) -> ClosureVerdict:
    found = {"bracket": None, "circ": None, "auto": None}
    basis = f.basis
    for u, v in itertools.product(basis, repeat=2):
        images = {
            "bracket": a.br(u, v),
            "circ": a.mul(u, v),
            "auto": a_endo(a, u) @ v,
        }
        for key, w in images.items():
            if found[key] is None and w not in f.subspace:
                found[key] = (u, v, w)
    return ClosureVerdict(
        found["bracket"] is None,
        found["circ"] is None,
        found["auto"] is None,
        found["bracket"],
        found["circ"],
        found["auto"],
    )
