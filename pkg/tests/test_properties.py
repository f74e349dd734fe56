"""Invariants that must hold for every group, sampled with hypothesis."""

from __future__ import annotations

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

import oracle
from conftest import group, oracle_table
from finmagnus.classify.affine import affine_analysis
from finmagnus.classify.search import gammal1_subgroups
from finmagnus.core import as_dense, build_direct_product, conjugacy_classes, element_orders
from finmagnus.iso import fingerprint, is_isomorphic
from finmagnus.lattice import all_subgroups, frattini, maximal_subgroups
from finmagnus.magnus import magnus_status
from finmagnus.structure import (
    all_normal_subgroups,
    chief_series,
    is_normal,
    normal_closure,
    prime_power,
    quotient,
)

POOL = ["C(12)", "S(3)", "D(8)", "Q8", "QD16", "A(4)", "S(4)", "D(10)", "AGL(1,5)", "C7:C3", "AGL(1,7)", "M9",
        "C(2) x S(3)", "C(3) x A(4)", "Crown(S(3), 2)", "AGammaL(1,8)", "E(2,4)", "C(4) x C(6)", "A(5)"]
SMALL = ["S(3)", "D(8)", "Q8", "A(4)", "D(10)", "C(2) x C(4)", "C(6)", "C7:C3", "S(4)"]

groups = st.sampled_from(POOL)


@given(groups, st.data())
def test_conjugation_preserves_order(expr, data):
    G = group(expr)
    orders = element_orders(G)
    x = data.draw(st.integers(0, G.order - 1))
    g = data.draw(st.integers(0, G.order - 1))
    assert orders[G.conjugate(x, g)] == orders[x]


@given(groups)
def test_class_data_invariants(expr):
    G = group(expr)
    cd = conjugacy_classes(G)
    assert int(cd.sizes.sum()) == G.order
    assert all(G.order % int(s) == 0 for s in cd.sizes)
    assert np.all(cd.centralizer_order * cd.sizes == G.order)
    inv = cd.inverse_class
    assert np.array_equal(inv[inv], np.arange(cd.count)) and inv[0] == 0


@given(groups)
def test_magnus_report_invariants(expr):
    rep = magnus_status(group(expr), cross_check=False)
    assert rep.mp == (rep.a_count == rep.b_count)
    assert rep.smp == (rep.mp and rep.all_real)
    assert (rep.witness is None) == rep.mp
    assert rep.a_count >= rep.b_count


@given(groups, st.data())
def test_normal_closure_is_least_normal_container(expr, data):
    G = group(expr)
    x = data.draw(st.integers(0, G.order - 1))
    containing = [N for N in all_normal_subgroups(G) if N.mask[x]]
    least = min(containing, key=lambda N: N.size)
    assert normal_closure(G, [x]) == least
    assert all(least <= N for N in containing)


@given(groups)
def test_chief_series_invariants(expr):
    G = group(expr)
    cs = chief_series(G)
    assert int(np.prod(cs.factor_orders())) == G.order
    for f in cs.factors:
        pp = prime_power(f.order)
        if f.prime is not None:
            assert pp == (f.prime, f.rank)
    rev = chief_series(G, tie_break="greatest")
    assert sorted(rev.factor_orders()) == sorted(cs.factor_orders())


@given(groups)
def test_quotient_hom_kernel_is_normal(expr):
    G = group(expr)
    for N in all_normal_subgroups(G)[:6]:
        Q, pi = quotient(G, N)
        assert Q.order * N.size == G.order
        assert pi.kernel() == N and is_normal(G, pi.kernel())


@given(st.sampled_from(SMALL))
def test_frattini_is_intersection_and_non_generators(expr):
    G, T = group(expr), oracle_table(expr)
    maxes = maximal_subgroups(G)
    inter = np.logical_and.reduce([M.mask for M in maxes])
    assert np.array_equal(frattini(G).mask, inter)
    # non-generators, by exhaustive search over subgroups H: <H, g> = G forces H = G
    subs = oracle.all_subgroups(T)
    nongen = {g for g in range(T.n) if all(len(H) == T.n for H in subs if len(oracle.closure(T, H | {g})) == T.n)}
    assert nongen == set(frattini(G).indices().tolist())


@given(st.sampled_from(["S(3)", "A(4)", "C7:C3", "M9", "Q8"]), st.sampled_from(["C(2)", "C(3)", "S(3)"]))
def test_backend_equivalence(a, b):
    P = build_direct_product([group(a), group(b)])
    D = as_dense(P)
    assert sorted(conjugacy_classes(P).sizes.tolist()) == sorted(conjugacy_classes(D).sizes.tolist())
    assert sorted(N.size for N in all_normal_subgroups(P)) == sorted(N.size for N in all_normal_subgroups(D))
    assert magnus_status(P).mp == magnus_status(D).mp


@given(groups, groups)
def test_isomorphism_reflexive_symmetric(a, b):
    G, H = group(a), group(b)
    assert is_isomorphic(G, G).verdict is True
    assert is_isomorphic(G, H).verdict == is_isomorphic(H, G).verdict
    if is_isomorphic(G, H).verdict:
        assert fingerprint(G) == fingerprint(H)


@given(st.sampled_from([4, 5, 7, 8, 9, 16, 25, 27]), st.data())
def test_affine_analysis_invariants(q, data):
    H = data.draw(st.sampled_from(gammal1_subgroups(q)))
    an = affine_analysis(q, H.generators())
    assert sum(an.orbit_sizes) == q
    assert an.orbits[0] == (0,)
    if H.order > 1:
        assert an.rank >= 2
    if an.two_transitive:
        assert an.mp_hypothesis


@given(st.sampled_from(["S(4)", "M9", "AGL(1,7)"]))
def test_subgroups_closed(expr):
    G = group(expr)
    t = G.table
    for H in all_subgroups(G)[:: max(1, len(all_subgroups(G)) // 20)]:
        idx = H.indices()
        assert H.mask[0] and H.mask[G.inverse_of[idx]].all()
        assert H.mask[t[np.ix_(idx, idx)]].all()


@given(st.sampled_from(["AGL(1,5)", "C7:C3", "AGL(1,7)", "M9", "AGL(1,4)", "AGammaL(1,9)"]))
def test_affine_groups_have_regular_translations(expr):
    G = group(expr)
    V = G.translations
    assert is_normal(G, V)
    assert V.size == G.affine_degree
