from __future__ import annotations

import pytest

import oracle
from conftest import group, oracle_table
from finmagnus.magnus import magnus_pairwise, magnus_sets, magnus_status
from finmagnus.structure import normal_closure

EXPRS = ["C(2)", "C(3)", "C(4)", "C(5)", "C(6)", "C(8)", "C(12)", "S(3)", "D(8)", "Q8", "QD16", "A(4)", "S(4)",
         "D(10)", "AGL(1,5)", "C7:C3", "AGL(1,7)", "M9", "E(2,3)", "C(3) x C(4)", "C(2) x C(4)", "A(5)"]


@pytest.mark.parametrize("expr", EXPRS)
def test_counting_criterion_matches_oracle(expr):
    rep = magnus_status(group(expr), cross_check=False)
    assert (rep.mp, rep.smp) == oracle.magnus_pairwise(oracle_table(expr))


@pytest.mark.parametrize("expr", EXPRS)
def test_library_pairwise_agrees(expr):
    rep = magnus_status(group(expr), cross_check=False)
    assert magnus_pairwise(group(expr)) == (rep.mp, rep.smp)


def test_c12_counts():
    # [DERIVED] 12 singleton classes pair into 7 inverse orbits; 6 cyclic subgroups
    rep = magnus_status(group("C(12)"))
    assert (rep.a_count, rep.b_count) == (7, 6)
    assert not rep.mp


def test_c12_witness_is_valid():
    G = group("C(12)")
    x, y = magnus_status(G).witness
    assert normal_closure(G, [x]) == normal_closure(G, [y])
    assert y not in (x, G.inv(x))


def test_elementary_abelian_smp():
    # [DERIVED] 8 self-inverse singleton classes, 8 distinct cyclic subgroups
    rep = magnus_status(group("E(2,3)"))
    assert rep.mp and rep.smp and rep.all_real


@pytest.mark.parametrize("expr, mp, smp", [("M9", True, True), ("S(3)", True, True), ("C(3)", True, False), ("S(4)", False, False)])
def test_known_verdicts(expr, mp, smp):
    rep = magnus_status(group(expr))
    assert (rep.mp, rep.smp) == (mp, smp)


def test_sets_partition_classes():
    sets = magnus_sets(group("AGL(1,7)"))
    assert len(sets.closure_of_class) == 7
    assert len(sets.A) >= len(sets.B)


def test_report_dict_shape():
    d = magnus_status(group("M9")).as_dict()
    assert list(d) == ["mp", "smp", "aCount", "bCount", "allReal", "witness"]
