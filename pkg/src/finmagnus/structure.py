"""Normal-subgroup machinery.

Everything here is built from class closures ``<x^G>``: each normal subgroup
is a join of them, a minimal normal subgroup is a minimal class closure, and a
chief series is grown by joining the current term with one closure at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import (
    DENSE_CAP,
    DenseGroup,
    ElementSet,
    Group,
    GroupHom,
    PermGroup,
    build_from_permutations,
    conjugacy_classes,
    subgroup_generators,
)
from .errors import LatticeCapExceeded, NotNormal, NotSolvable, OrderCapExceeded

NORMAL_LATTICE_CAP = 100_000


def prime_power(n: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``n == p**k`` (k >= 1), else None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        return (n, 1)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _nontrivial_conj(G: Group) -> np.ndarray:
    def compute() -> np.ndarray:
        cp = G.conj_perms
        keep = [i for i in range(cp.shape[0]) if not np.array_equal(cp[i], np.arange(G.order))]
        return np.ascontiguousarray(cp[keep]) if keep else np.zeros((0, G.order), dtype=np.int32)

    return G.cached("conj_nontrivial", compute)


def _closure_perms(G: Group, x: int) -> np.ndarray:
    return np.ascontiguousarray(np.vstack([G.rcol(x)[None, :], _nontrivial_conj(G)]))


def normal_closure(G: Group, S) -> ElementSet:
    """Smallest normal subgroup containing ``S``."""
    elems = S.indices() if isinstance(S, ElementSet) else sorted({int(s) for s in S})
    cur = np.zeros(G.order, dtype=bool)
    cur[0] = True
    used: list[int] = []
    conj = _nontrivial_conj(G)
    for x in elems:
        if cur[x]:
            continue
        used.append(int(x))
        perms = np.ascontiguousarray(np.vstack([G.rcols(used), conj]))
        cur = kernels.reach(perms, cur.view(np.uint8))
    return ElementSet(cur, subgroup=True)


def class_closures(G: Group) -> list[ElementSet]:
    """``<x^G>`` for each class representative, indexed by class number."""

    def compute() -> list[ElementSet]:
        cd = conjugacy_classes(G)
        seed = np.zeros(G.order, dtype=np.uint8)
        seed[0] = 1
        out = []
        for x in cd.reps:
            if x == 0:
                out.append(ElementSet.trivial(G.order))
            else:
                out.append(ElementSet(kernels.reach(_closure_perms(G, int(x)), seed), subgroup=True))
        return out

    return G.cached("class_closures", compute)


def join_normal(G: Group, N: ElementSet, x: int) -> ElementSet:
    """``N <x^G>`` for a normal ``N``."""
    if N.mask[x]:
        return N
    return ElementSet(kernels.reach(_closure_perms(G, int(x)), N.mask.view(np.uint8)), subgroup=True)


def join(G: Group, A: ElementSet, B: ElementSet) -> ElementSet:
    """Subgroup generated by two subgroups."""
    gens = list(subgroup_generators(G, A)) + list(subgroup_generators(G, B))
    if not gens:
        return ElementSet.trivial(G.order)
    return ElementSet(kernels.reach(G.rcols(gens), A.mask.view(np.uint8)), subgroup=True)


def is_normal(G: Group, H: ElementSet) -> bool:
    m = H.mask
    return all(bool(np.all(m[c[m]])) for c in G.conj_perms)


def canonical_order(sets: list[ElementSet]) -> list[ElementSet]:
    """Sort by size, then lexicographically by sorted element list."""
    return sorted(sets, key=lambda s: (s.size, tuple(s.indices().tolist())))


def all_normal_subgroups(G: Group, cap: int = NORMAL_LATTICE_CAP) -> list[ElementSet]:
    """Every normal subgroup, as the join-closure of the class closures.

    In an abelian group every subgroup is normal and the compiled subgroup
    enumeration is much faster than repeated joins, so that route is used.
    """

    def compute() -> list[ElementSet]:
        from .lattice import LATTICE_ORDER_CAP, subgroup_lattice

        if is_abelian(G) and G.order <= LATTICE_ORDER_CAP:
            subs = subgroup_lattice(G).subgroups
            if len(subs) > cap:
                raise LatticeCapExceeded(f"more than {cap} normal subgroups")
            return canonical_order(list(subs))
        cd = conjugacy_classes(G)
        closures = class_closures(G)
        gens: list[int] = []
        seen_keys: set[bytes] = set()
        for c, C in enumerate(closures):
            if C.key not in seen_keys:
                seen_keys.add(C.key)
                gens.append(int(cd.reps[c]))
        found: dict[bytes, ElementSet] = {}
        queue: list[ElementSet] = []
        for C in [ElementSet.trivial(G.order)] + closures:
            if C.key not in found:
                found[C.key] = C
                queue.append(C)
        qi = 0
        while qi < len(queue):
            N = queue[qi]
            qi += 1
            for x in gens:
                if N.mask[x]:
                    continue
                J = join_normal(G, N, x)
                if J.key not in found:
                    if len(found) >= cap:
                        raise LatticeCapExceeded(f"more than {cap} normal subgroups")
                    found[J.key] = J
                    queue.append(J)
        return canonical_order(list(found.values()))

    return G.cached(("normal_lattice", cap), compute)


@dataclass
class MinimalNormals:
    subgroups: list[ElementSet]
    socle: ElementSet
    monolithic: bool

    def __iter__(self):
        return iter((self.subgroups, self.socle, self.monolithic))


def minimal_normal_subgroups(G: Group) -> MinimalNormals:
    def compute() -> MinimalNormals:
        if G.order == 1:
            return MinimalNormals([], ElementSet.trivial(1), False)
        uniq: dict[bytes, ElementSet] = {}
        for C in class_closures(G):
            if C.size > 1:
                uniq.setdefault(C.key, C)
        cands = sorted(uniq.values(), key=lambda s: s.size)
        minimal: list[ElementSet] = []
        for C in cands:
            if not any(M.issubset(C) for M in minimal):
                minimal.append(C)
        minimal = canonical_order(minimal)
        soc = minimal[0]
        for M in minimal[1:]:
            soc = join_normal(G, soc, M.least() if M.least() else int(M.indices()[1]))
        return MinimalNormals(minimal, soc, len(minimal) == 1)

    return G.cached("minimal_normals", compute)


def socle(G: Group) -> ElementSet:
    return minimal_normal_subgroups(G).socle


def coset_labels(G: Group, N: ElementSet) -> tuple[np.ndarray, np.ndarray]:
    """Right-coset index of every element and the least representative of each coset."""
    gens = subgroup_generators(G, N)
    labels = kernels.orbit_labels(_coset_moves(G, gens), G.order)
    reps = np.unique(labels).astype(np.int64)
    return np.searchsorted(reps, labels).astype(np.int64), reps


def _coset_moves(G: Group, gens) -> np.ndarray:
    # cosets xN are the orbits of x -> x*n
    if not gens:
        return np.zeros((0, G.order), dtype=np.int32)
    return G.rcols(gens)


def quotient(G: Group, N: ElementSet, name: str | None = None) -> tuple[DenseGroup, GroupHom]:
    """``G/N`` with cosets numbered by least representative."""
    if not N.mask[0] or not is_normal(G, N):
        raise NotNormal("quotient requires a normal subgroup")
    coset, reps = coset_labels(G, N)
    m = reps.size
    if m > DENSE_CAP:
        raise OrderCapExceeded(f"quotient of order {m} exceeds the dense cap {DENSE_CAP}")
    table = coset[G.mul_vec(reps[:, None], reps[None, :])]
    qgens = []
    for g in G.generators:
        c = int(coset[g])
        if c and c not in qgens:
            qgens.append(c)
    Q = DenseGroup(table, name=name, generators=qgens)
    return Q, GroupHom(G, Q, coset)


def normal_core(G: Group, H: ElementSet) -> ElementSet:
    """Largest normal subgroup inside ``H``: the union of classes contained in ``H``."""
    cd = conjugacy_classes(G)
    inside = np.bincount(cd.class_of[H.mask], minlength=cd.count)
    full = inside == cd.sizes
    return ElementSet(full[cd.class_of], subgroup=True)


def _conj_perms_of(G: Group, gens) -> np.ndarray:
    rows = [G.conj_perm(int(g)) for g in gens]
    if not rows:
        return np.zeros((0, G.order), dtype=np.int32)
    return np.ascontiguousarray(np.stack(rows))


def normal_closure_in(G: Group, H: ElementSet, S) -> ElementSet:
    """Normal closure of ``S`` inside the subgroup ``H``."""
    s = [int(x) for x in S if int(x) != 0]
    if not s:
        return ElementSet.trivial(G.order)
    perms = np.ascontiguousarray(np.vstack([G.rcols(s), _conj_perms_of(G, subgroup_generators(G, H))]))
    seed = np.zeros(G.order, dtype=np.uint8)
    seed[0] = 1
    return ElementSet(kernels.reach(perms, seed), subgroup=True)


def derived_subgroup(G: Group, H: ElementSet | None = None) -> ElementSet:
    H = H if H is not None else ElementSet.full(G.order)
    gens = subgroup_generators(G, H)
    comms = {G.commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1 :]}
    return normal_closure_in(G, H, comms)


@dataclass
class DerivedSeries:
    series: list[ElementSet]
    solvable: bool
    derived_length: int | None

    def __iter__(self):
        return iter((self.series, self.solvable, self.derived_length))


def derived_series(G: Group) -> DerivedSeries:
    def compute() -> DerivedSeries:
        cur = ElementSet.full(G.order)
        series = [cur]
        while cur.size > 1:
            nxt = derived_subgroup(G, cur)
            if nxt.size == cur.size:
                return DerivedSeries(series, False, None)
            series.append(nxt)
            cur = nxt
        return DerivedSeries(series, True, len(series) - 1)

    return G.cached("derived_series", compute)


def is_solvable(G: Group) -> bool:
    return derived_series(G).solvable


def lower_central_series(G: Group) -> list[ElementSet]:
    def compute() -> list[ElementSet]:
        cur = ElementSet.full(G.order)
        out = [cur]
        ggens = G.generators
        while cur.size > 1:
            comms = {G.commutator(x, g) for x in subgroup_generators(G, cur) for g in ggens}
            nxt = normal_closure(G, [c for c in comms if c])
            if nxt.size == cur.size:
                break
            out.append(nxt)
            cur = nxt
        return out

    return G.cached("lower_central", compute)


def is_nilpotent(G: Group) -> bool:
    return lower_central_series(G)[-1].size == 1


def is_abelian(G: Group) -> bool:
    return _nontrivial_conj(G).shape[0] == 0


def p_core(G: Group, p: int) -> ElementSet:
    """Largest normal p-subgroup: the join of the class closures of p-power order."""
    N = ElementSet.trivial(G.order)
    cd = conjugacy_classes(G)
    for c, C in enumerate(class_closures(G)):
        pp = prime_power(C.size)
        if C.size > 1 and pp is not None and pp[0] == p:
            N = join_normal(G, N, int(cd.reps[c]))
    return N


def fitting_subgroup(G: Group) -> ElementSet:
    def compute() -> ElementSet:
        F = ElementSet.trivial(G.order)
        for p in prime_factors(G.order):
            P = p_core(G, p)
            for x in P.indices():
                if not F.mask[x]:
                    F = join_normal(G, F, int(x))
        return F

    return G.cached("fitting", compute)


def fitting_height(G: Group) -> int:
    if not is_solvable(G):
        raise NotSolvable("Fitting height is defined for solvable groups only")
    h = 0
    Q: Group = G
    while Q.order > 1:
        F = fitting_subgroup(Q)
        h += 1
        if F.size == Q.order:
            break
        Q, _ = quotient(Q, F)
    return h


@dataclass
class ChiefFactor:
    order: int
    prime: int | None
    rank: int | None
    centralizer: ElementSet


@dataclass
class ChiefSeries:
    chain: list[ElementSet]
    factors: list[ChiefFactor] = field(default_factory=list)

    def factor_orders(self) -> list[int]:
        return [f.order for f in self.factors]

    def p_rank(self, p: int) -> int:
        """Largest k with a chief factor of order p**k; 0 when there is none."""
        ks = [f.rank for f in self.factors if f.prime == p and f.rank is not None]
        return max(ks, default=0)


def factor_centralizer(G: Group, lower: ElementSet, upper: ElementSet) -> ElementSet:
    """``{g : [x, g] in lower for all x in upper}``."""
    mask = np.ones(G.order, dtype=bool)
    inv = G.inverse_of
    e = G.elements
    for x in subgroup_generators(G, upper):
        xg = G.mul_vec(G.mul_vec(inv, np.int64(x)), e)  # x^g = g^-1 x g, vectorized over g
        comm = G.mul_vec(np.int64(inv[x]), xg)
        mask &= lower.mask[comm]
    return ElementSet(mask, subgroup=True)


def chief_series(G: Group, tie_break: str = "least") -> ChiefSeries:
    """Chief series grown from the bottom by joining one class closure at a time.

    Among candidate successors the least order wins; ties go to the least
    new element (``tie_break="least"``) or the greatest (``"greatest"``).
    """
    if tie_break not in ("least", "greatest"):
        raise ValueError("tie_break must be 'least' or 'greatest'")

    def compute() -> ChiefSeries:
        cd = conjugacy_classes(G)
        closures = class_closures(G)
        reps: list[int] = []
        seen: set[bytes] = set()
        for c, C in enumerate(closures):
            if C.size > 1 and C.key not in seen:
                seen.add(C.key)
                reps.append(int(cd.reps[c]))
        cur = ElementSet.trivial(G.order)
        chain = [cur]
        factors: list[ChiefFactor] = []
        while cur.size < G.order:
            best = None
            best_key = None
            tried: set[bytes] = set()
            for x in reps:
                if cur.mask[x]:
                    continue
                J = join_normal(G, cur, x)
                if J.key in tried:
                    continue
                tried.add(J.key)
                new_least = int(np.argmax(J.mask & ~cur.mask))
                key = (J.size, new_least if tie_break == "least" else -new_least)
                if best_key is None or key < best_key:
                    best, best_key = J, key
            assert best is not None
            order = best.size // cur.size
            pp = prime_power(order)
            factors.append(
                ChiefFactor(
                    order=order,
                    prime=pp[0] if pp else None,
                    rank=pp[1] if pp else None,
                    centralizer=factor_centralizer(G, cur, best),
                )
            )
            chain.append(best)
            cur = best
        return ChiefSeries(chain, factors)

    return G.cached(("chief_series", tie_break), compute)


def p_rank(G: Group, p: int) -> int:
    return chief_series(G).p_rank(p)


@dataclass
class FactorAction:
    image: PermGroup
    hom: GroupHom
    centralizer: ElementSet
    points: np.ndarray  # coset representatives of lower in upper, in point order

    def __iter__(self):
        return iter((self.image, self.hom, self.centralizer))


def _factor_points(G: Group, lower: ElementSet, upper: ElementSet) -> tuple[np.ndarray, np.ndarray]:
    coset, reps = coset_labels(G, lower)
    pts = np.unique(coset[upper.mask])
    return coset, pts


def chief_factor_action(G: Group, series: ChiefSeries, step: int) -> FactorAction:
    """Conjugation action of ``G`` on the ``step``-th chief factor, as permutations of its cosets."""
    lower, upper = series.chain[step], series.chain[step + 1]
    coset, pts = _factor_points(G, lower, upper)
    _, reps_all = coset_labels(G, lower)
    reps = reps_all[pts]
    point_of = np.full(reps_all.size, -1, dtype=np.int64)
    point_of[pts] = np.arange(pts.size)
    inv = G.inverse_of
    # images[g, i] = point of reps[i]^g
    conj = G.mul_vec(G.mul_vec(inv[:, None], reps[None, :]), G.elements[:, None])
    images = point_of[coset[conj]]
    img_group = build_from_permutations(pts.size, [images[g] for g in G.generators])
    hom = GroupHom(G, img_group, img_group.index_of_images(images[:, img_group.base]))
    return FactorAction(img_group, hom, series.factors[step].centralizer, reps)


def factor_semidirect(G: Group, series: ChiefSeries, step: int) -> PermGroup:
    """``M ⋊ G/C_G(M)`` for the chief factor ``M``, acting on the cosets of ``M``.

    Translations are right multiplications by elements of the factor; the
    complement is the conjugation action.
    """
    lower, upper = series.chain[step], series.chain[step + 1]
    coset, pts = _factor_points(G, lower, upper)
    _, reps_all = coset_labels(G, lower)
    reps = reps_all[pts]
    point_of = np.full(reps_all.size, -1, dtype=np.int64)
    point_of[pts] = np.arange(pts.size)
    inv = G.inverse_of
    gens = []
    for g in G.generators:
        conj = G.mul_vec(G.mul_vec(np.int64(inv[g]), reps), np.int64(g))
        gens.append(point_of[coset[conj]])
    for m in subgroup_generators(G, upper):
        gens.append(point_of[coset[G.mul_vec(reps, np.int64(m))]])
    return build_from_permutations(pts.size, gens)
