from __future__ import annotations

import numpy as np
import pytest

import oracle
from conftest import group, oracle_table
from finmagnus.core import (
    ElementSet,
    build_direct_product,
    build_from_cayley,
    build_from_permutations,
    center,
    centralizer,
    closure,
    conjugacy_classes,
    dump_cayley,
    element_order,
    element_orders,
    load_cayley,
    parse_cayley_text,
    subgroup_as_group,
    validate_group,
)
from finmagnus.errors import NoIdentity, NonAssociative, NotLatinSquare

SMALL = ["C(6)", "S(3)", "D(8)", "Q8", "A(4)", "D(10)", "C(2) x C(4)", "QD16", "S(4)", "C7:C3", "AGL(1,5)", "M9"]


def test_klein_table_accepted():
    G = build_from_cayley([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
    assert G.order == 4
    assert sorted(element_orders(G).tolist()) == [1, 2, 2, 2]


def test_identity_moved_to_index_zero():
    G = build_from_cayley([[1, 0], [0, 1]], labels=["a", "e"])
    assert G.mul(0, 1) == 1
    assert G.label(0) == "e"


@pytest.mark.parametrize(
    "table, exc",
    [
        ([[0, 1], [1, 1]], NotLatinSquare),
        ([[1, 0, 2], [0, 2, 1], [2, 1, 0]], NoIdentity),
        ([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]], NonAssociative),
    ],
)
def test_bad_tables_rejected(table, exc):
    with pytest.raises(exc):
        build_from_cayley(table)


def test_cayley_text_round_trip(tmp_path):
    G = group("S(3)")
    path = tmp_path / "s3.txt"
    path.write_text(dump_cayley(G))
    H = load_cayley(path)
    assert np.array_equal(H.table, G.table)
    t, labels = parse_cayley_text(dump_cayley(G))
    assert np.array_equal(np.asarray(t), G.table)


def test_permutation_closure_of_s4():
    G = build_from_permutations(4, [[1, 0, 2, 3], [1, 2, 3, 0]])
    assert G.order == 24
    validate_group(G)


@pytest.mark.parametrize("expr", SMALL)
def test_class_sizes_match_oracle(expr):
    cd = conjugacy_classes(group(expr))
    T = oracle_table(expr)
    got = sorted(cd.members(c).tolist() for c in range(cd.count))
    want = sorted(sorted(c) for c in oracle.conjugacy_classes(T))
    assert got == want


@pytest.mark.parametrize("expr", SMALL)
def test_center_and_orders_match_oracle(expr):
    G, T = group(expr), oracle_table(expr)
    assert center(G).size == oracle.center_order(T)
    assert [element_order(G, x) for x in range(G.order)] == [T.order_of(x) for x in range(T.n)]


def test_class_zero_is_identity():
    cd = conjugacy_classes(group("S(4)"))
    assert cd.members(0).tolist() == [0]
    assert sorted(cd.sizes.tolist()) == [1, 3, 6, 6, 8]


def test_real_classes_of_c7c3():
    # C7:C3 has 5 classes; only the identity class is real
    cd = conjugacy_classes(group("C7:C3"))
    assert cd.count == 5
    assert cd.real_classes().tolist() == [0]


def test_direct_product_orders_and_projection():
    P = build_direct_product([group("S(3)"), group("C(4)")])
    assert P.order == 24
    pi = P.projection(0)
    assert pi.is_surjective()
    assert pi.kernel().size == 4


@pytest.mark.parametrize("backend", ["S(4)", "C(2) x S(3)", "Crown(S(3), 2)"])
def test_backends_agree_with_their_table(backend):
    G = group(backend)
    t = G.table
    a = np.arange(G.order)
    for b in (1, G.order // 2, G.order - 1):
        assert np.array_equal(G.mul_vec(a, np.full_like(a, b)), t[:, b])
        assert np.array_equal(G.rcol(b), t[:, b])
        assert np.array_equal(G.lcol(b), t[b, :])


def test_element_set_algebra():
    A = ElementSet.from_indices(6, [0, 1, 2], subgroup=True)
    B = ElementSet.from_indices(6, [0, 2, 4])
    assert (A & B).indices().tolist() == [0, 2]
    assert ElementSet.trivial(6) <= A
    assert not A.issubset(B)
    assert A == ElementSet.from_indices(6, [2, 1, 0])


def test_centralizer_of_a_transposition_in_s4():
    G = group("S(4)")
    x = next(x for x in range(G.order) if element_order(G, x) == 2 and conjugacy_classes(G).sizes[conjugacy_classes(G).class_of[x]] == 6)
    assert centralizer(G, [x]).size == 4


def test_closure_is_subgroup():
    G = group("M9")
    H = closure(G, [1, 2])
    idx = H.indices()
    prods = G.table[np.ix_(idx, idx)]
    assert set(np.unique(prods).tolist()) <= set(idx.tolist())


def test_subgroup_as_group_embeds():
    G = group("S(4)")
    H = closure(G, [int(x) for x in range(G.order) if element_order(G, x) == 3])
    K, inc = subgroup_as_group(G, H)
    assert K.order == 12
    assert inc.is_injective()
    assert oracle.is_isomorphic(oracle.Table.of(K), oracle_table("A(4)"))
