import itertools
import random

import sympy as sp

from fman.algebra import AlgebraStructure
from fman.dpois import check_dpois_closures, dpois_fiber, leibnizator_matrix
from fman.exact import SubspaceQ, rank
from helpers import ex, fman_subset, naive_leibnizator, random_constants


def span(*vs):
    return SubspaceQ.span(vs, 3)


def test_fibers_of_table_structures():
    assert dpois_fiber(ex("n31_1_A3")).subspace == SubspaceQ.full(3)
    assert dpois_fiber(ex("n31_1_A4")).subspace == span((1, 0, 0), (0, 1, 0))
    assert dpois_fiber(ex("n31_2_D1")).subspace == span((0, 1, 0), (0, 0, 1))
    # the literal D2 constants still give the stated fiber
    assert dpois_fiber(ex("n31_2_D2")).subspace == span((1, 0, 0), (0, 1, 0))


def test_fiber_basis_is_rref():
    f = dpois_fiber(ex("n31_2_D1"))
    assert f.rank == 2
    assert f.basis == ((0, 1, 0), (0, 0, 1))


def test_closures_on_fman_table_structures():
    for name in ("n31_1_A3", "n31_1_A4", "n31_2_D1"):
        a = ex(name)
        v = check_dpois_closures(a, dpois_fiber(a))
        assert v.ok, (name, v)


def test_d1_closure_witnesses_by_hand():
    a = ex("n31_2_D1")
    f = dpois_fiber(a)
    e2, e3 = (0, 1, 0), (0, 0, 1)
    assert a.br(e2, e3) == (0, 0, 0)  # in n31^(2) the pair e2, e3 commutes
    assert a.mul(e3, e3) == e3 and a.mul(e3, e3) in f.subspace


def test_poisson_full_fiber_is_closed():
    a = AlgebraStructure.from_constants("h", 3, {(1, 2): {0: 1}})
    f = dpois_fiber(a)
    assert f.subspace == SubspaceQ.full(3)
    assert check_dpois_closures(a, f).ok


def test_closure_failure_surfaces_witness():
    # arbitrary constants without any axioms: the product escapes the fiber
    rng = random.Random(0)
    random_constants(rng, 3, -1, 1)
    a = random_constants(rng, 3, -1, 1)
    f = dpois_fiber(a)
    v = check_dpois_closures(a, f)
    assert f.rank == 1 and not v.circ_closed and not v.autoparallel
    u, w, img = v.circ_witness
    assert img == a.mul(u, w) and img not in f.subspace


def test_matrix_row_order_and_rank_nullity():
    for a in fman_subset()[:30] + (ex("n31_1_A4"), ex("n31_2_D1")):
        n = a.dim
        m = leibnizator_matrix(a)
        L = naive_leibnizator(a)
        for r, (j, k, out) in enumerate(itertools.product(range(n), repeat=3)):
            assert list(m.entries[r]) == [L[(i, j, k)][out] for i in range(n)]
        f = dpois_fiber(a)
        assert f.rank == n - rank(m)
        for v in f.basis:
            assert not any(m.apply(v))


def test_fiber_rank_matches_sympy_nullspace():
    for a in fman_subset()[:12] + (ex("n31_1_A4"), ex("n31_2_D1"), ex("n31_2_D2")):
        m = leibnizator_matrix(a)
        oracle = sp.Matrix(m.rows, m.cols, lambda i, j: sp.Rational(m.entries[i][j])).nullspace()
        assert len(oracle) == dpois_fiber(a).rank


def test_closures_hold_on_random_fman_inputs():
    for a in fman_subset():
        v = check_dpois_closures(a, dpois_fiber(a))
        assert v.ok, (a.name, v)
