from __future__ import annotations

import numpy as np
import pytest

import oracle
from conftest import group
from finmagnus.classify.affine import FrobeniusDecomposition, affine_analysis, affine_decomposition, is_frobenius
from finmagnus.classify.search import (
    abelian_shape_ok,
    abelian_types,
    degree_bound,
    euler_phi,
    gammal1_search,
    gammal1_subgroups,
    irreducible_subgroups_gl2,
    power23_solutions,
)
from finmagnus.fields import finite_field
from finmagnus.iso import is_isomorphic
from finmagnus.lattice import all_subgroups
from finmagnus.structure import all_normal_subgroups


def _brute_irreducible(q, gens) -> bool:
    """No proper nonzero additive subgroup of F_q is invariant (F_p-subspaces are additive subgroups)."""
    F = finite_field(q)
    maps = [g.as_array() for g in gens]
    for v in range(1, q):
        span = {0, v}
        frontier = [v]
        while frontier:
            new = []
            for x in frontier:
                for y in [int(m[x]) for m in maps] + [int(F.add[x, z]) for z in list(span)]:
                    if y not in span:
                        span.add(y)
                        new.append(y)
            frontier = new
        if len(span) < q:
            return False
    return True


def _conjugacy_class_count(G) -> int:
    seen, count = set(), 0
    for H in all_subgroups(G):
        if H.key in seen:
            continue
        count += 1
        idx = H.indices()
        for g in range(G.order):
            m = np.zeros(G.order, dtype=bool)
            m[G.conj_perm(g)[idx]] = True
            seen.add(np.packbits(m, bitorder="little").tobytes())
    return count


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 16, 25, 27, 32])
def test_gammal1_enumeration_matches_generic_lattice(q):
    assert len(gammal1_subgroups(q)) == _conjugacy_class_count(group(f"GammaL(1,{q})"))


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_irreducibility_matches_brute_force(q):
    for H in gammal1_subgroups(q):
        an = affine_analysis(q, H.generators())
        assert an.irreducible == _brute_irreducible(q, H.generators()), H.describe()


def test_agl_is_two_transitive():
    from finmagnus.classify.search import GammaSubgroup

    an = affine_analysis(7, GammaSubgroup(7, 1, 1, 0).generators())
    assert an.two_transitive and an.orbit_sizes == (1, 6)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_pruning_is_exact(q):
    pruned = [(r.g0, r.mp, r.smp) for r in gammal1_search(q, prune=True)]
    direct = [(r.g0, r.mp, r.smp) for r in gammal1_search(q, prune=False)]
    assert pruned == direct


def test_frobenius_decompositions():
    assert is_frobenius(group("AGL(1,5)"), affine_decomposition(group("AGL(1,5)")))
    G = group("S(4)")
    V = next(N for N in all_normal_subgroups(G) if N.size == 4)
    S3 = next(H for H in all_subgroups(G) if H.size == 6 and (H & V).size == 1)
    assert not is_frobenius(G, FrobeniusDecomposition(V, S3))


def _iso_names(groups, names):
    return sorted(n for n in names if any(is_isomorphic(g, group(n)).verdict for g in groups))


def test_irreducible_mp_subgroups_of_gl2_2():
    found = irreducible_subgroups_gl2(2, mp_only=True)
    assert len(found) == 2
    assert _iso_names(found, ["C(3)", "S(3)"]) == ["C(3)", "S(3)"]


def test_irreducible_mp_subgroups_of_gl2_3():
    found = irreducible_subgroups_gl2(3, mp_only=True)
    assert len(found) == 4
    assert _iso_names(found, ["C(4)", "D(8)", "Q8", "QD16"]) == ["C(4)", "D(8)", "Q8", "QD16"]


def test_power23():
    assert power23_solutions(60, 40) == {(1, 0), (1, 1), (2, 1), (3, 2)}


def test_degree_bound():
    d = degree_bound()
    assert d.cyclic_mp_orders == (1, 2, 3, 4, 6)
    assert (d.m_max, d.bound) == (42, 505)
    assert euler_phi(42) == 12


@pytest.mark.parametrize("n, count", [(16, 5), (72, 6), (64, 11), (128, 15), (1, 1)])
def test_abelian_type_counts(n, count):
    # [TRIVIAL] number of abelian groups of order n = product of partition numbers
    assert len(abelian_types(n)) == count


def test_abelian_shapes():
    assert abelian_shape_ok((2, 2, 3)) and abelian_shape_ok((2, 4, 4))
    assert not abelian_shape_ok((3, 4)) and not abelian_shape_ok((8,))


def test_abelian_shape_matches_brute_magnus():
    for parts in [(2, 3), (4,), (3, 4), (2, 4), (8,), (9,), (3, 3), (5,)]:
        expr = " x ".join(f"C({m})" for m in parts)
        mp, _ = oracle.magnus_pairwise(oracle.Table.of(group(expr)))
        assert mp == abelian_shape_ok(tuple(sorted(parts)))
