"""Isomorphism testing by invariant pruning and backtracking over generator images."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import Group, GroupHom, conjugacy_classes, element_orders, order_histogram, center
from .errors import SearchBudgetExceeded
from .structure import all_normal_subgroups, derived_series

NODE_CAP = 10_000_000


def fingerprint(G: Group, deep: bool = False) -> tuple:
    """Isomorphism invariants; ``deep`` adds the normal-subgroup order multiset."""

    def base() -> tuple:
        cd = conjugacy_classes(G)
        ds = derived_series(G)
        return (
            G.order,
            order_histogram(G),
            tuple(sorted(cd.sizes.tolist())),
            center(G).size,
            ds.derived_length if ds.solvable else -1,
        )

    fp = G.cached("fingerprint", base)
    if deep:
        fp = fp + (tuple(sorted(N.size for N in all_normal_subgroups(G))),)
    return fp


@dataclass
class IsomorphismResult:
    """``verdict`` is True, False, or None when the search budget ran out."""

    verdict: bool | None
    mapping: GroupHom | None = None
    nodes: int = 0

    def __bool__(self) -> bool:
        if self.verdict is None:
            raise SearchBudgetExceeded(f"isomorphism search gave up after {self.nodes} nodes")
        return self.verdict

    @property
    def unknown(self) -> bool:
        return self.verdict is None


def _element_invariants(G: Group) -> np.ndarray:
    cd = conjugacy_classes(G)
    orders = element_orders(G)
    return orders * (G.order + 1) + cd.sizes[cd.class_of]


def _search_generators(G: Group, inv_G: np.ndarray, counts: dict[int, int]) -> list[int]:
    """Short generating set of class representatives.

    Each step takes the representative whose addition reaches the most
    elements, breaking ties by how scarce its possible images are.
    """
    cd = conjugacy_classes(G)
    reps = [int(r) for r in cd.reps if r != 0]
    gens: list[int] = []
    cur = np.zeros(G.order, dtype=bool)
    cur[0] = True
    while not cur.all():
        best = None
        for x in reps:
            if cur[x]:
                continue
            trial = kernels.reach(G.rcols(gens + [x]), cur.view(np.uint8)).astype(bool)
            key = (-int(trial.sum()), counts.get(int(inv_G[x]), 0), x)
            if best is None or key < best[0]:
                best = (key, x, trial)
        assert best is not None
        gens.append(best[1])
        cur = best[2]
    return gens


def is_isomorphic(G: Group, H: Group, node_cap: int = NODE_CAP) -> IsomorphismResult:
    if G.order != H.order:
        return IsomorphismResult(False)
    if fingerprint(G) != fingerprint(H):
        return IsomorphismResult(False)
    if G.order == 1:
        return IsomorphismResult(True, GroupHom(G, H, np.zeros(1, dtype=np.int64)))
    inv_G, inv_H = _element_invariants(G), _element_invariants(H)
    vals, cnts = np.unique(inv_H, return_counts=True)
    counts = dict(zip(vals.tolist(), cnts.tolist()))
    gens = _search_generators(G, inv_G, counts)
    cdH = conjugacy_classes(H)
    pools = []
    for d, g in enumerate(gens):
        pool = np.flatnonzero(inv_H == inv_G[g])
        if d == 0:
            pool = pool[cdH.reps[cdH.class_of[pool]] == pool]
        pools.append(pool.astype(np.int32))

    ta = np.ascontiguousarray(G.table)
    tb = np.ascontiguousarray(H.table)
    phi = np.empty(G.order, dtype=np.int32)
    used = np.empty(H.order, dtype=np.uint8)
    ga = np.asarray(gens, dtype=np.int32)
    imgs = np.zeros(len(gens), dtype=np.int32)
    nodes = 0
    # iterative depth-first search over image choices
    pos = [0] * len(gens)
    depth = 0
    while depth >= 0:
        if pos[depth] >= len(pools[depth]):
            pos[depth] = 0
            depth -= 1
            if depth >= 0:
                pos[depth] += 1
            continue
        imgs[depth] = pools[depth][pos[depth]]
        nodes += 1
        if nodes > node_cap:
            return IsomorphismResult(None, nodes=nodes)
        size = kernels.extend_hom(ta, tb, ga[: depth + 1], imgs[: depth + 1], phi, used)
        if size < 0:
            pos[depth] += 1
            continue
        if depth == len(gens) - 1:
            hom = GroupHom(G, H, phi.astype(np.int64))
            return IsomorphismResult(True, hom, nodes)
        depth += 1
    return IsomorphismResult(False, nodes=nodes)
