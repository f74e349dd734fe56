from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import group
from finmagnus import _kernels_py as py
from finmagnus import kernels
from finmagnus.lattice import cyclic_representatives

cy = pytest.importorskip("finmagnus._kernels")

EXPRS = ["S(4)", "M9", "QD16", "C7:C3 x C(2)", "E(2,4)", "A(5)", "Crown(S(3), 2)"]


def test_selection_reports_backend():
    assert kernels.IMPLEMENTATION in ("cython", "python")


def _lattice_inputs(G):
    reps, pos = cyclic_representatives(G)
    conj = np.ascontiguousarray(np.stack([G.conj_perm(int(c)) for c in reps]))
    t = np.ascontiguousarray(G.table)
    return t, np.ascontiguousarray(t.T), reps, conj, pos


@pytest.mark.parametrize("expr", EXPRS)
def test_subgroup_lattice_equivalent(expr):
    args = _lattice_inputs(group(expr))
    a = cy.subgroup_lattice(*args, 10**5)
    b = py.subgroup_lattice(*args, 10**5)
    _, ea, ga, xa = a
    _, eb, gb, xb = b
    assert [e.tolist() for e in ea] == [e.tolist() for e in eb]
    assert [tuple(g) for g in ga] == [tuple(g) for g in gb]
    assert [dict(d) for d in xa] == [dict(d) for d in xb]


def test_subgroup_lattice_cap_returns_none():
    args = _lattice_inputs(group("E(2,4)"))
    assert cy.subgroup_lattice(*args, 10) is None
    assert py.subgroup_lattice(*args, 10) is None


@pytest.mark.parametrize("expr", EXPRS)
def test_orbit_labels_equivalent(expr):
    G = group(expr)
    perms = np.ascontiguousarray(G.conj_perms.astype(np.int32))
    assert np.array_equal(cy.orbit_labels(perms, G.order), py.orbit_labels(perms, G.order))


@given(st.sampled_from(EXPRS), st.data())
def test_reach_equivalent(expr, data):
    G = group(expr)
    perms = np.ascontiguousarray(G.conj_perms.astype(np.int32))
    seeds = np.zeros(G.order, dtype=np.uint8)
    for x in data.draw(st.lists(st.integers(0, G.order - 1), min_size=1, max_size=4)):
        seeds[x] = 1
    assert np.array_equal(np.asarray(cy.reach(perms, seeds), dtype=bool), py.reach(perms, seeds))


@given(st.sampled_from(["S(4)", "M9", "QD16"]), st.data())
def test_extend_hom_equivalent(expr, data):
    G = group(expr)
    t = np.ascontiguousarray(G.table)
    k = data.draw(st.integers(1, 3))
    gens = np.array(data.draw(st.lists(st.integers(1, G.order - 1), min_size=k, max_size=k)), dtype=np.int32)
    imgs = np.array(data.draw(st.lists(st.integers(0, G.order - 1), min_size=k, max_size=k)), dtype=np.int32)
    out = []
    for impl in (cy, py):
        phi = np.empty(G.order, dtype=np.int32)
        used = np.empty(G.order, dtype=np.uint8)
        size = impl.extend_hom(t, t, gens, imgs, phi, used)
        out.append((size, phi.copy() if size > 0 else None))
    assert out[0][0] == out[1][0]
    if out[0][0] > 0:
        assert np.array_equal(out[0][1], out[1][1])


def test_identity_images_give_identity_map():
    G = group("M9")
    t = np.ascontiguousarray(G.table)
    gens = np.array(G.generators, dtype=np.int32)
    phi = np.empty(G.order, dtype=np.int32)
    used = np.empty(G.order, dtype=np.uint8)
    assert cy.extend_hom(t, t, gens, gens, phi, used) == G.order
    assert np.array_equal(phi, np.arange(G.order))
