from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from conftest import group, oracle_table
from finmagnus.core import build_from_cayley
from finmagnus.iso import fingerprint, is_isomorphic

PAIRS = [
    ("D(8)", "Q8"), ("C(4) x C(4)", "C(2) x Q8"), ("C(6)", "S(3)"), ("C(2) x C(6)", "D(12)"),
    ("A(4)", "D(12)"), ("C(2) x D(8)", "C(2) x Q8"), ("AGammaL(1,4)", "S(4)"), ("C(2) x C(3)", "C(6)"),
    ("GammaL(1,8)", "C7:C3"), ("Quot(S(4), 4, 0)", "S(3)"), ("QD16", "D(16)"),
]


@pytest.mark.parametrize("a, b", PAIRS)
def test_matches_oracle(a, b):
    res = is_isomorphic(group(a), group(b))
    assert res.verdict == oracle.is_isomorphic(oracle_table(a), oracle_table(b))


@pytest.mark.parametrize("a, b", [p for p in PAIRS if oracle.is_isomorphic(oracle_table(p[0]), oracle_table(p[1]))])
def test_mapping_is_isomorphism(a, b):
    G, H = group(a), group(b)
    phi = is_isomorphic(G, H).mapping.image
    assert sorted(phi.tolist()) == list(range(H.order))
    assert np.array_equal(phi[G.table], H.table[np.ix_(phi, phi)])


def _relabel(G, perm):
    # new label perm[x] for old x, identity kept at 0
    inv = np.argsort(perm)
    return build_from_cayley(perm[G.table[np.ix_(inv, inv)]])


@given(st.sampled_from(["M9", "S(4)", "QD16", "AGL(1,7)", "C(2) x A(4)"]), st.randoms(use_true_random=False))
def test_relabelled_copy_is_isomorphic(expr, rnd):
    G = group(expr)
    rest = list(range(1, G.order))
    rnd.shuffle(rest)
    H = _relabel(G, np.array([0] + rest))
    assert fingerprint(H) == fingerprint(G)
    assert is_isomorphic(G, H).verdict is True


def test_different_orders_short_circuit():
    assert is_isomorphic(group("C(4)"), group("C(5)")).nodes == 0
