import itertools
from fractions import Fraction

from fman.algebra import AlgebraStructure, ad, leibnizator
from fman.connection import a_endo, curvature_split
from fman.exact import MatQ, SubspaceQ
from fman.holonomy import (
    EndoSubalgebra,
    check_inclusion,
    closure,
    extended_poisson_holonomy,
    holonomy_algebra,
    holonomy_diagnostics,
    leibnizator_span,
    poisson_holonomy,
    span_endos,
)
from helpers import ex, fman_subset, lie_ca_corpus

J = MatQ.from_rows([[0, 0, 0], [0, 0, 1], [0, 0, 0]])
AFF1 = AlgebraStructure.from_constants("aff1", 2, {(0, 1): {1: 1}})


def e(n, i):
    return tuple(Fraction(int(k == i)) for k in range(n))


def test_flat_input_has_zero_holonomy():
    assert holonomy_algebra(ex("n31_1_A3")).rank == 0


def test_d1_holonomy_is_spanned_by_j():
    h = holonomy_algebra(ex("n31_2_D1"))
    assert h.rank == 1
    assert h.matrices() == [J]
    assert J.apply((0, 0, 1)) == (0, 1, 0)
    assert (J @ J).is_zero()
    d = holonomy_diagnostics(h)
    assert (d.dim, d.abelian, d.nilpotent_generators) == (1, True, True)


def test_d2_split_curvature_closure_is_one_dimensional_and_abelian():
    a = ex("n31_2_D2")
    h = holonomy_algebra(a, curvature_split(a))
    d = holonomy_diagnostics(h)
    assert (d.dim, d.abelian) == (1, True)


def test_poisson_holonomy_examples():
    for name in ("n31_1_A3", "n31_1_A4", "n31_2_D1"):
        assert poisson_holonomy(ex(name)).rank == 0
    assert poisson_holonomy(AlgebraStructure.from_constants("ab", 3)).rank == 0
    p = poisson_holonomy(AFF1)
    assert p.rank >= 1
    ad_e2 = ad(AFF1, e(2, 1))
    assert ad_e2[1, 0] == -1
    assert p.contains(ad_e2)


def test_two_step_nilpotent_brute_force():
    a = AlgebraStructure.from_constants("h5", 5, {(1, 2): {0: 1}, (3, 4): {0: 1}}, {(1, 1): {3: 1}})
    # [g,g] = span{e1} is central, so ad over it vanishes and [g,[g,g]] = 0
    gens = [ad(a, e(5, 0))] + [a_endo(a, a.br(e(5, i), e(5, 0))) for i in range(5)]
    assert all(g.is_zero() for g in gens)
    assert poisson_holonomy(a).rank == 0


def test_inclusion_examples():
    zero = EndoSubalgebra(3, SubspaceQ.zero(9))
    full = EndoSubalgebra(3, SubspaceQ.full(9))
    h = holonomy_algebra(ex("n31_2_D1"))
    assert check_inclusion(zero, h).ok
    v = check_inclusion(full, h)
    assert not v.ok and v.witness is not None
    assert not h.contains(v.witness)


def test_diagnostics_examples():
    d = holonomy_diagnostics(EndoSubalgebra(3, SubspaceQ.zero(9)))
    assert (d.dim, d.abelian) == (0, True)
    adx, ady = ad(AFF1, e(2, 0)), ad(AFF1, e(2, 1))
    both = EndoSubalgebra(2, span_endos([adx, ady], 2))
    assert holonomy_diagnostics(both).abelian == adx.commutator(ady).is_zero()
    assert not holonomy_diagnostics(both).abelian


def assert_closure_sound(a, h):
    n = a.dim
    r = curvature_split(a)
    for m in r.r_total.values():
        assert h.contains(m)
    mats = h.matrices()
    for X, Y in itertools.combinations(mats, 2):
        assert h.contains(X.commutator(Y))
    for k, X in itertools.product(range(n), mats):
        assert h.contains(a_endo(a, e(n, k)).commutator(X))
    assert h.rounds <= n * n


def test_closure_soundness_on_corpus():
    for a in lie_ca_corpus()[:40]:
        assert_closure_sound(a, holonomy_algebra(a))


def test_minimality_from_single_generator():
    for a in lie_ca_corpus()[:60]:
        if a.dim > 3:
            continue
        h = holonomy_algebra(a)
        for m in curvature_split(a).r_total.values():
            if not m.is_zero():
                assert closure(a, [m]).subspace.issubset(h.subspace)
                break


def test_poisson_inputs_contain_bracket_curvature():
    for a in fman_subset():
        if leibnizator(a).is_zero():
            h = holonomy_algebra(a)
            n = a.dim
            for i, j in itertools.combinations(range(n), 2):
                assert h.contains(ad(a, a.br(e(n, i), e(n, j))).scale(Fraction(-1, 4)))


def test_leibnizator_span_and_extension():
    a4 = ex("n31_1_A4")
    l = leibnizator_span(a4)
    assert l.rank == 1
    assert l.matrices() == [MatQ.from_rows([[0, 0, 1], [0, 0, 0], [0, 0, 0]])]
    ext = extended_poisson_holonomy(a4)
    assert ext.rank == 1
    # A4 is flat, so the holonomy algebra is zero and the extension is not contained in it
    assert not check_inclusion(ext, holonomy_algebra(a4)).ok
    d1 = ex("n31_2_D1")
    assert check_inclusion(extended_poisson_holonomy(d1), holonomy_algebra(d1)).ok


def test_closure_log_records_rounds():
    log = []
    h = closure(ex("n31_2_D1"), [J], log)
    assert h.rank == 1 and h.rounds == 0 and log == []
