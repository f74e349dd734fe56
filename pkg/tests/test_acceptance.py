"""The twelve acceptance criteria, each at exact equality.

Every test records a one-line verdict that is printed in the terminal summary.
"""

from __future__ import annotations

import pytest

from conftest import group, record_acceptance
from finmagnus.classify.claims import verify
from finmagnus.classify.search import degree_bound, irreducible_subgroups_gl2, power23_solutions
from finmagnus.iso import is_isomorphic

pytestmark = pytest.mark.acceptance


def _run(number: int, *claims: str, **params) -> None:
    reports = [verify(c, **params) for c in claims]
    ok = all(r.status == "pass" for r in reports)
    parts = [f"{r.claim}={r.status} ({r.counts.get('assertions', 0)} checks)" for r in reports]
    record_acceptance(number, ok, "; ".join(parts))
    for r in reports:
        assert r.status == "pass", (r.claim, r.witnesses[:5], r.evidence)


def test_01_primitive_classification():
    _run(1, "primitive-mp", "primitive-smp", qmax=505)


def test_02_exceptional_four():
    _run(2, "main1bis")


def test_03_crown_powers():
    _run(3, "crown")


def test_04_direct_products():
    _run(4, "mpdir-pairs")


def test_05_counting_criterion_oracle():
    _run(5, "oracle")


def test_06_quotient_closure_and_solvability():
    _run(6, "quotients")


def test_07_p_ranks():
    _run(7, "prank", "srineq", "huppert")


def test_08_chief_factor_orders():
    _run(8, "chief-orders")


def test_09_arithmetic_lemmas():
    sols = power23_solutions(60, 40)
    d = degree_bound()
    ok = sols == {(1, 0), (1, 1), (2, 1), (3, 2)} and d.bound == 505 and d.m_max == 42
    record_acceptance(9, ok, f"power23={sorted(sols)} bound={d.bound} m_max={d.m_max}")
    assert ok


def test_10_abelian_classification():
    _run(10, "abelian")


def _names(groups, names):
    return sorted(n for n in names if any(is_isomorphic(g, group(n)).verdict for g in groups))


def test_11_gl2_mp_subgroups():
    i2 = irreducible_subgroups_gl2(2, mp_only=True)
    i3 = irreducible_subgroups_gl2(3, mp_only=True)
    want2, want3 = ["C(3)", "S(3)"], ["C(4)", "D(8)", "Q8", "QD16"]
    ok = len(i2) == 2 and _names(i2, want2) == want2 and len(i3) == 4 and _names(i3, want3) == want3
    record_acceptance(11, ok, f"I(2,2): {len(i2)} groups; I(2,3): {len(i3)} groups")
    assert ok


def test_12_fitting_and_primes():
    _run(12, "fitting", "primes")
