from __future__ import annotations

import pytest

from finmagnus.classify import claims
from finmagnus.classify.claims import CLAIMS, ClaimReport, verify
from finmagnus.errors import OrderCapExceeded


def test_unknown_claim_raises():
    with pytest.raises(KeyError):
        verify("no-such-claim")


def test_report_keys_in_fixed_order():
    rep = ClaimReport("x", "pass", ["note"], {"b": 2, "a": 1}, 1.23456)
    assert list(rep.as_dict()) == ["schema", "claim", "status", "counts", "evidence", "witnesses", "table"]
    assert list(rep.as_dict()["counts"]) == ["a", "b"]
    assert rep.as_dict(timing=True)["runtime"] == 1.235


def test_cap_makes_report_inconclusive(monkeypatch):
    def capped(s, **_):
        s.check(True, "C(2)", "fine")
        raise OrderCapExceeded("too big")

    monkeypatch.setitem(claims.SUITES, "power23", capped)
    rep = verify("power23")
    assert rep.status == "inconclusive"
    assert any("too big" in e for e in rep.evidence)


def test_failed_check_wins_over_cap(monkeypatch):
    def failing(s, **_):
        s.check(False, "S(3)", "bad", elements=[1, 2])
        raise OrderCapExceeded("too big")

    monkeypatch.setitem(claims.SUITES, "power23", failing)
    rep = verify("power23")
    assert rep.status == "fail"
    assert rep.witnesses == [{"expr": "S(3)", "detail": "bad", "elements": [1, 2]}]


@pytest.mark.parametrize("claim", ["power23", "degree-bound"])
def test_fast_suites_pass(claim):
    assert verify(claim).status == "pass"


def test_every_claim_has_a_suite():
    assert set(CLAIMS) == set(claims.SUITES)
    assert len(CLAIMS) == 19
