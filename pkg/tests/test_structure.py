from __future__ import annotations

import pytest

import oracle
from conftest import group, oracle_table
from finmagnus.structure import (
    all_normal_subgroups,
    chief_series,
    derived_series,
    factor_semidirect,
    fitting_height,
    fitting_subgroup,
    is_abelian,
    is_nilpotent,
    is_normal,
    is_solvable,
    minimal_normal_subgroups,
    normal_closure,
    prime_factors,
    prime_power,
    quotient,
    socle,
)

SMALL = ["C(6)", "S(3)", "D(8)", "Q8", "A(4)", "D(10)", "C(2) x C(4)", "QD16", "S(4)", "C7:C3", "AGL(1,5)",
         "C(2) x S(3)", "E(2,3)", "M9", "A(5)"]


@pytest.mark.parametrize("expr", SMALL)
def test_normal_subgroups_match_oracle(expr):
    got = {frozenset(N.indices().tolist()) for N in all_normal_subgroups(group(expr))}
    assert got == oracle.normal_subgroups(oracle_table(expr))


@pytest.mark.parametrize("expr", SMALL)
def test_normal_closures_match_oracle(expr):
    G, T = group(expr), oracle_table(expr)
    for x in range(0, G.order, max(1, G.order // 12)):
        assert frozenset(normal_closure(G, [x]).indices().tolist()) == oracle.normal_closure(T, x)


@pytest.mark.parametrize("expr", [e for e in SMALL if e != "A(5)"])
def test_chief_factors_match_oracle(expr):
    cs = chief_series(group(expr))
    assert sorted(cs.factor_orders()) == sorted(oracle.chief_factor_orders(oracle_table(expr)))


@pytest.mark.parametrize("expr", SMALL)
def test_solvability_matches_oracle(expr):
    assert is_solvable(group(expr)) == oracle.is_solvable(oracle_table(expr))


@pytest.mark.parametrize(
    "expr, dl, h",
    [("C(6)", 1, 1), ("S(3)", 2, 2), ("A(4)", 2, 2), ("S(4)", 3, 3), ("Q8", 2, 1), ("M9", 3, 2), ("AGL(1,5)", 2, 2)],
)
def test_derived_length_and_fitting_height(expr, dl, h):
    G = group(expr)
    assert derived_series(G).derived_length == dl
    assert fitting_height(G) == h


def test_a5_not_solvable():
    ds = derived_series(group("A(5)"))
    assert not ds.solvable and ds.derived_length is None


@pytest.mark.parametrize("expr, size", [("S(4)", 4), ("A(4)", 4), ("D(8)", 8), ("M9", 9), ("C(2) x S(3)", 6)])
def test_fitting_subgroup(expr, size):
    assert fitting_subgroup(group(expr)).size == size


def test_nilpotent_and_abelian_flags():
    assert is_nilpotent(group("QD16")) and not is_abelian(group("QD16"))
    assert not is_nilpotent(group("S(3)"))
    assert is_abelian(group("C(2) x C(4)"))


def test_minimal_normals_and_socle():
    assert minimal_normal_subgroups(group("M9")).monolithic
    mn = minimal_normal_subgroups(group("C(6)"))
    assert sorted(M.size for M in mn.subgroups) == [2, 3]
    assert socle(group("C(2) x S(3)")).size == 6


def test_quotient_is_homomorphic_image():
    G = group("S(4)")
    V = next(N for N in all_normal_subgroups(G) if N.size == 4)
    Q, pi = quotient(G, V)
    assert Q.order == 6
    assert pi.kernel() == V
    assert oracle.is_isomorphic(oracle.Table.of(Q), oracle_table("S(3)"))


def test_chief_series_is_normal_chain():
    G = group("M9 x C(2)")
    cs = chief_series(G)
    for N in cs.chain:
        assert is_normal(G, N)
    assert cs.p_rank(3) == 2 and cs.p_rank(2) == 1


def test_factor_semidirect_of_a4():
    G = group("A(4)")
    cs = chief_series(G)
    step = cs.factor_orders().index(4)
    U = factor_semidirect(G, cs, step)
    assert U.order == 12


def test_prime_helpers():
    assert prime_power(81) == (3, 4)
    assert prime_power(12) is None
    assert prime_factors(504) == [2, 3, 7]
