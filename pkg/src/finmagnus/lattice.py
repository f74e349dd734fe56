"""Full subgroup lattice: maximal subgroups, Frattini subgroup, S_p, j_p, primitivity."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import kernels
from .core import ElementSet, Group, element_orders, greedy_generators
from .errors import NotSolvable, OrderCapExceeded, SubgroupCountCapExceeded
from .structure import (
    canonical_order,
    is_solvable,
    minimal_normal_subgroups,
    normal_core,
    prime_factors,
    prime_power,
    quotient,
)

LATTICE_ORDER_CAP = 2500
SOLVABLE_ORDER_CAP = 6000
SUBGROUP_COUNT_CAP = 100_000


def cyclic_representatives(G: Group) -> tuple[np.ndarray, np.ndarray]:
    """Least generator of each cyclic subgroup, and for every element the position of its own."""

    def compute() -> tuple[np.ndarray, np.ndarray]:
        t = G.table
        orders = element_orders(G)
        rep_of = np.zeros(G.order, dtype=np.int64)
        for x in range(1, G.order):
            o = int(orders[x])
            cur, best = x, x
            for k in range(2, o):
                cur = int(t[cur, x])
                if gcd(k, o) == 1 and cur < best:
                    best = cur
            rep_of[x] = best
        reps = np.unique(rep_of[1:]).astype(np.int32)
        pos = np.full(G.order, -1, dtype=np.int32)
        pos[1:] = np.searchsorted(reps, rep_of[1:])
        return reps, pos

    return G.cached("cyclic_reps", compute)


class SubgroupLattice:
    """Every subgroup of a group with the cover relation between them."""

    def __init__(self, G: Group, cap: int = SUBGROUP_COUNT_CAP):
        if G.order > LATTICE_ORDER_CAP:
            raise OrderCapExceeded(f"subgroup lattice of order {G.order} exceeds cap {LATTICE_ORDER_CAP}")
        self.group = G
        reps, pos = cyclic_representatives(G)
        conj = np.ascontiguousarray(np.stack([G.conj_perm(int(c)) for c in reps])) if reps.size else np.zeros((0, G.order), dtype=np.int32)
        t = np.ascontiguousarray(G.table)
        out = kernels.subgroup_lattice(t, np.ascontiguousarray(t.T), reps, conj, pos, cap)
        if out is None:
            raise SubgroupCountCapExceeded(f"more than {cap} subgroups")
        _, elements, gens, ext = out
        n = G.order
        self.subgroups: list[ElementSet] = []
        for el in elements:
            m = np.zeros(n, dtype=bool)
            m[el] = True
            self.subgroups.append(ElementSet(m, subgroup=True))
        self.gens = gens
        self.sizes = np.array([s.size for s in self.subgroups], dtype=np.int64)
        ncyc = np.array([int(s.mask[reps].sum()) for s in self.subgroups], dtype=np.int64)
        self.covers: list[list[int]] = [[] for _ in elements]
        self.covered_by: list[list[int]] = [[] for _ in elements]
        for i, d in enumerate(ext):
            for j, cnt in d.items():
                if cnt == ncyc[j] - ncyc[i]:
                    self.covers[i].append(j)
                    self.covered_by[j].append(i)
        self.top = int(np.flatnonzero(self.sizes == n)[0])

    def __len__(self) -> int:
        return len(self.subgroups)

    def maximal_indices(self) -> list[int]:
        return self.covered_by[self.top]

    def cover_edges(self):
        for i, js in enumerate(self.covers):
            for j in js:
                yield i, j


def subgroup_lattice(G: Group) -> SubgroupLattice:
    return G.cached("subgroup_lattice", lambda: SubgroupLattice(G))


def solvable_subgroups(G: Group, cap: int = SUBGROUP_COUNT_CAP) -> list[ElementSet]:
    """Every subgroup of a solvable group, by prime-index normal extension.

    A solvable ``K`` has a normal subgroup ``H`` of prime index ``p``, and then
    ``K = <H, c>`` for any ``c`` in ``K - H``, where ``c`` normalizes ``H`` and
    ``c**p`` lies in ``H``. Growing from the trivial subgroup this way reaches
    every subgroup without computing any cover relation.
    """
    if G.order > SOLVABLE_ORDER_CAP:
        raise OrderCapExceeded(f"subgroup enumeration of order {G.order} exceeds cap {SOLVABLE_ORDER_CAP}")
    if not is_solvable(G):
        raise NotSolvable("prime-index extension needs a solvable group")
    n = G.order
    t = np.asarray(G.table, dtype=np.int64)
    tt = np.ascontiguousarray(t.T)
    inv = G.inverse_of
    conj = np.take_along_axis(tt, t[inv], axis=1)  # conj[g, x] = g^-1 x g
    # powers[m - 1, x] = x**m
    orders = element_orders(G)
    top = int(orders.max())
    powers = np.empty((top, n), dtype=np.int64)
    powers[0] = np.arange(n)
    for m in range(1, top):
        powers[m] = t[powers[m - 1], np.arange(n)]

    found: dict[bytes, int] = {}
    subgroups: list[ElementSet] = []
    gens: list[tuple[int, ...]] = []

    def add(mask: np.ndarray, g: tuple[int, ...]) -> None:
        key = np.packbits(mask).tobytes()
        if key not in found:
            if len(subgroups) >= cap:
                raise SubgroupCountCapExceeded(f"more than {cap} subgroups")
            found[key] = len(subgroups)
            subgroups.append(ElementSet(mask, subgroup=True))
            gens.append(g)

    triv = np.zeros(n, dtype=bool)
    triv[0] = True
    add(triv, ())
    i = 0
    while i < len(subgroups):
        H, hg = subgroups[i], gens[i]
        i += 1
        hmask = H.mask
        hel = H.indices()
        norm = np.ones(n, dtype=bool)
        for g in hg:
            norm &= hmask[conj[:, g]]
        cand = np.flatnonzero(norm & ~hmask)
        if cand.size == 0:
            continue
        # least m with c**m in H, i.e. the order of cH
        inside = hmask[powers[:, cand]]
        rel = np.argmax(inside, axis=0) + 1
        rel[~inside.any(axis=0)] = 0
        covered = np.zeros(n, dtype=bool)
        for c, m in zip(cand.tolist(), rel.tolist()):
            if covered[c] or m < 2 or prime_power(m) is None or prime_power(m)[1] != 1:
                continue
            K = np.zeros(n, dtype=bool)
            x = 0
            for _ in range(m):
                K[tt[x, hel]] = True
                x = int(t[x, c])
            covered |= K
            add(K, hg + (c,))
    return subgroups


def _small_generators(Q: Group, tries: int = 400) -> list[int]:
    """A generating set of ``Q``, as short as a seeded random search finds."""
    best = list(greedy_generators(Q, ElementSet.full(Q.order)))
    if Q.order == 1:
        return best
    cols = np.ascontiguousarray(np.asarray(Q.table, dtype=np.int32).T)
    seed = np.zeros(Q.order, dtype=np.uint8)
    seed[0] = 1
    rng = np.random.default_rng(0)
    for r in range(1, len(best)):
        for _ in range(tries):
            pick = rng.choice(np.arange(1, Q.order), size=r, replace=False)
            if kernels.reach(cols[pick], seed.copy()).all():
                return sorted(pick.tolist())
    return best


def complements(G: Group, N: ElementSet) -> list[ElementSet]:
    """Every complement of the normal subgroup ``N``, by depth-first choice of lifts.

    Fix generators ``q_i`` of ``G/N`` and coset representatives ``r_i``; a
    complement is generated by some ``r_i * n_i`` with ``n_i`` in ``N``, and a
    partial choice is abandoned as soon as it meets ``N`` nontrivially.
    """
    Q, pi = quotient(G, N)
    img = pi.image
    reps = [int(np.flatnonzero(img == q)[0]) for q in _small_generators(Q)]
    t = np.asarray(G.table, dtype=np.int32)
    cols = np.ascontiguousarray(t.T)
    nel = N.indices().tolist()
    nmask = N.mask
    seed = np.zeros(G.order, dtype=np.uint8)
    seed[0] = 1
    found: dict[bytes, ElementSet] = {}

    def walk(i: int, chosen: list[int], mask: np.ndarray) -> None:
        if i == len(reps):
            if int(mask.sum()) == Q.order:
                H = ElementSet(mask.astype(bool), subgroup=True)
                found.setdefault(H.key, H)
            return
        for n in nel:
            x = int(t[reps[i], n])
            nxt = chosen + [x]
            m = kernels.reach(cols[nxt], mask.copy())
            if int(np.count_nonzero(m.astype(bool) & nmask)) == 1:
                walk(i + 1, nxt, m)

    walk(0, [], seed)
    return canonical_order(list(found.values()))


def _solvable_maximals(G: Group) -> list[ElementSet]:
    """Maximal subgroups of a solvable group through an abelian minimal normal ``N``.

    A maximal subgroup either contains ``N`` and is the preimage of a maximal
    subgroup of ``G/N``, or meets ``N`` in a normal subgroup of ``G`` and so
    complements it; conversely every complement of ``N`` is maximal.
    """
    N = min(minimal_normal_subgroups(G).subgroups, key=lambda M: M.size)
    Q, pi = quotient(G, N)
    out = [ElementSet(M.mask[pi.image], subgroup=True) for M in maximal_subgroups(Q)]
    out.extend(complements(G, N))
    return out


def all_subgroups(G: Group) -> list[ElementSet]:
    return canonical_order(subgroup_lattice(G).subgroups)


def maximal_subgroups(G: Group) -> list[ElementSet]:
    def compute() -> list[ElementSet]:
        if G.order == 1:
            return []
        if G.order > LATTICE_ORDER_CAP and G.order <= SOLVABLE_ORDER_CAP and is_solvable(G):
            return canonical_order(_solvable_maximals(G))
        L = subgroup_lattice(G)
        return canonical_order([L.subgroups[i] for i in L.maximal_indices()])

    return G.cached("maximals", compute)


def frattini(G: Group) -> ElementSet:
    """Intersection of the maximal subgroups; the whole group when there are none."""

    def compute() -> ElementSet:
        ms = maximal_subgroups(G)
        if not ms:
            return ElementSet.full(G.order)
        mask = np.ones(G.order, dtype=bool)
        for M in ms:
            mask &= M.mask
        return ElementSet(mask, subgroup=True)

    return G.cached("frattini", compute)


def _p_exponent(index: int, p: int) -> int | None:
    pp = prime_power(index)
    if pp is None or pp[0] != p:
        return None
    return pp[1]


def s_p(G: Group, p: int) -> int:
    """Largest ``s`` with a maximal subgroup of index ``p**s``; 0 when there is none."""
    best = 0
    for M in maximal_subgroups(G):
        e = _p_exponent(G.order // M.size, p)
        if e is not None:
            best = max(best, e)
    return best


def j_p(G: Group, p: int) -> int:
    """Largest ``j`` such that ``p**j`` is an index in some maximal chain of subgroups.

    Each cover edge extends to a chain from the trivial subgroup to the whole
    group, so the maximum over cover edges is the maximum over chains; the
    depth-first walk below visits exactly the edges reachable from the top.
    """
    L = subgroup_lattice(G)
    best = 0
    seen = {L.top}
    stack = [L.top]
    while stack:
        j = stack.pop()
        for i in L.covered_by[j]:
            e = _p_exponent(int(L.sizes[j] // L.sizes[i]), p)
            if e is not None:
                best = max(best, e)
            if i not in seen:
                seen.add(i)
                stack.append(i)
    return best


@dataclass
class LatticeSummary:
    count: int
    maximals: list[ElementSet]
    frattini: ElementSet
    s: dict[int, int]
    j: dict[int, int]


def lattice_summary(G: Group) -> LatticeSummary:
    primes = prime_factors(G.order)
    return LatticeSummary(
        count=len(subgroup_lattice(G)),
        maximals=maximal_subgroups(G),
        frattini=frattini(G),
        s={p: s_p(G, p) for p in primes},
        j={p: j_p(G, p) for p in primes},
    )


@dataclass
class Primitivity:
    primitive: bool
    witness: ElementSet | None

    def __bool__(self) -> bool:
        return self.primitive


def is_primitive(G: Group) -> Primitivity:
    """Whether some maximal subgroup has trivial core; the witness is the least such."""
    for M in maximal_subgroups(G):
        if normal_core(G, M).size == 1:
            return Primitivity(True, M)
    return Primitivity(False, None)


def primitive_quotients(G: Group) -> list[Group]:
    """``G / core(M)`` over maximal ``M``, one per isomorphism type."""
    from .iso import is_isomorphic

    cores: dict[bytes, ElementSet] = {}
    for M in maximal_subgroups(G):
        C = normal_core(G, M)
        cores.setdefault(C.key, C)
    mask = np.ones(G.order, dtype=bool)
    for C in cores.values():
        mask &= C.mask
    if G.order > 1 and not np.array_equal(mask, frattini(G).mask):
        raise AssertionError("intersection of maximal cores differs from the Frattini subgroup")
    out: list[Group] = []
    for C in canonical_order(list(cores.values())):
        Q, _ = quotient(G, C)
        if not any(bool(is_isomorphic(Q, R)) for R in out):
            out.append(Q)
    return out
