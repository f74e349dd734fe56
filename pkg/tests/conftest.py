from __future__ import annotations

import os
import sys
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@lru_cache(maxsize=None)
def group(expr: str):
    from finmagnus.cli.dsl import build

    return build(expr)


@lru_cache(maxsize=None)
def oracle_table(expr: str):
    import oracle

    return oracle.Table.of(group(expr))


@pytest.fixture
def G():
    return group


ACCEPTANCE: dict[int, tuple[str, str]] = {}


def record_acceptance(number: int, ok: bool, summary: str) -> None:
    ACCEPTANCE[number] = ("PASS" if ok else "FAIL", summary)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, summary = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {status}  {summary}")
