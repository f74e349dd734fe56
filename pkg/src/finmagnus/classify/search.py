"""Bounded classification searches and the arithmetic behind the degree bound.

Subgroups of ``GammaL(1,q) = <w> x| <phi>`` (``w`` primitive, ``phi`` the
Frobenius map, ``q = p**n``) are exactly ``<w**d, w**k phi**s>`` with
``d | q-1``, ``s | n`` and ``k * sum_{i < n/s} p**(i*s) = 0 (mod d)``.
Conjugation moves ``k`` by multiples of ``gcd(p**s - 1, d)`` and multiplies it
by ``p``, so the least ``k`` in its orbit names the conjugacy class.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from pathlib import Path

import numpy as np

from ..constructors import affine_from_linear, affine_semidirect, cyclic, gl2, lines_of
from ..core import Group, build_direct_product, build_from_permutations
from ..errors import ResourceCapError
from ..fields import SemilinearMap, finite_field
from ..iso import is_isomorphic
from ..lattice import subgroup_lattice
from ..magnus import MagnusReport, magnus_status
from ..structure import prime_power
from .affine import AffineAnalysis, analyse_action

SEARCH_VERSION = "2"


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


@dataclass(frozen=True)
class GammaSubgroup:
    """``<w**d, w**k phi**s>`` inside ``GammaL(1,q)``."""

    q: int
    d: int
    s: int
    k: int

    @property
    def order(self) -> int:
        F = finite_field(self.q)
        return (self.q - 1) // self.d * (F.n // self.s)

    def generators(self) -> list[SemilinearMap]:
        F = finite_field(self.q)
        w = F.primitive_element
        gens = []
        if self.d < self.q - 1:
            gens.append(SemilinearMap(self.q, F.pow(w, self.d)))
        if self.s < F.n or self.k % self.d:
            gens.append(SemilinearMap(self.q, F.pow(w, self.k), self.s))
        return gens

    def describe(self) -> str:
        if self.s == finite_field(self.q).n:  # phi**n is the identity
            return f"<w^{self.d}>" if self.k % self.d == 0 else f"<w^{self.d}, w^{self.k}>"
        return f"<w^{self.d}, w^{self.k} phi^{self.s}>"


def gammal1_subgroups(q: int) -> list[GammaSubgroup]:
    """One subgroup per ``GammaL(1,q)``-conjugacy class, sorted by (order, d, s, k)."""
    pp = prime_power(q)
    if pp is None:
        from ..errors import NotPrimePower

        raise NotPrimePower(f"{q} is not a prime power")
    p, n = pp
    out = []
    for d in divisors(q - 1):
        for s in divisors(n):
            m = n // s
            total = sum(p ** (i * s) for i in range(m))
            g = gcd(p**s - 1, d)
            seen: set[int] = set()
            for k in range(g):
                if k in seen or (k * total) % d:
                    continue
                orbit = set()
                x = k
                while x not in orbit:
                    orbit.add(x)
                    x = (x * p) % g
                seen |= orbit
                out.append(GammaSubgroup(q, d, s, min(orbit)))
    out.sort(key=lambda h: (h.order, h.d, h.s, h.k))
    return out


@dataclass
class SearchRow:
    q: int
    g0: str
    g0_order: int
    analysis: AffineAnalysis
    mp: bool | None
    smp: bool | None
    decided_by: str  # "orbits", "quotient", "direct", or "cap"
    report: MagnusReport | None = None
    group: Group | None = field(default=None, repr=False, compare=False)
    key: tuple = ()

    def as_dict(self) -> dict:
        a = self.analysis
        return {
            "q": self.q,
            "g0": self.g0,
            "g0Order": self.g0_order,
            "rank": a.rank,
            "orbitSizes": list(a.orbit_sizes),
            "twoTransitive": a.two_transitive,
            "mpHypothesis": a.mp_hypothesis,
            "irreducible": a.irreducible,
            "mp": self.mp,
            "smp": self.smp,
            "decidedBy": self.decided_by,
        }


def _verdict(G0_perms: list[np.ndarray], degree: int, analysis: AffineAnalysis, build_affine, prune: bool):
    """Decide MP/SMP of ``V x| G0``.

    Pruning is exact: MP forces the orbit condition on the socle, and MP
    passes to the quotient ``G0``.
    """
    if prune and not analysis.mp_hypothesis:
        return False, False, "orbits", None, None
    if prune:
        G0 = build_from_permutations(degree, G0_perms)
        if not magnus_status(G0, cross_check=False).mp:
            return False, False, "quotient", None, None
    G = build_affine()
    rep = magnus_status(G)
    return rep.mp, rep.smp, "direct", rep, G


def _cache_path(q: int, prune: bool) -> Path | None:
    root = os.environ.get("MAGNUS_CACHE_DIR")
    if not root:
        return None
    return Path(root) / f"gammal1-q{q}-prune{int(prune)}-v{SEARCH_VERSION}.json"


def gammal1_search(q: int, prune: bool = True, keep_groups: bool = False) -> list[SearchRow]:
    """Every irreducible ``G0 <= GammaL(1,q)`` up to conjugacy, with the verdict for ``V x| G0``."""
    cache = _cache_path(q, prune)
    if cache is not None and cache.exists() and not keep_groups:
        return [_row_from_json(r) for r in json.loads(cache.read_text())]
    F = finite_field(q)
    rows = []
    for H in gammal1_subgroups(q):
        gens = H.generators()
        perms = [g.as_array() for g in gens]
        arr = np.stack(perms) if perms else np.zeros((0, q), dtype=np.int64)
        an = analyse_action(F.p, F.n, arr, H.order, F.neg)
        if not an.irreducible:
            continue
        try:
            mp, smp, how, rep, G = _verdict(perms, q, an, lambda: affine_semidirect(q, gens), prune)
        except ResourceCapError:
            mp = smp = None
            how, rep, G = "cap", None, None
        rows.append(
            SearchRow(q, H.describe(), H.order, an, mp, smp, how, rep, G if keep_groups else None, (H.d, H.s, H.k))
        )
    if cache is not None and not keep_groups:
        cache.parent.mkdir(parents=True, exist_ok=True)
        cache.write_text(json.dumps([_row_to_json(r) for r in rows]))
    return rows


def _row_to_json(r: SearchRow) -> dict:
    a = r.analysis
    rep = None
    if r.report is not None:
        rep = [r.report.mp, r.report.smp, r.report.a_count, r.report.b_count, r.report.all_real,
               list(r.report.witness) if r.report.witness else None,
               list(r.report.witness_classes) if r.report.witness_classes else None]
    return {
        "q": r.q, "g0": r.g0, "order": r.g0_order, "key": list(r.key),
        "analysis": [a.q, a.g0_order, [list(o) for o in a.orbits], a.rank, a.two_transitive,
                     a.mp_hypothesis, a.irreducible],
        "mp": r.mp, "smp": r.smp, "how": r.decided_by, "report": rep,
    }


def _row_from_json(d: dict) -> SearchRow:
    a = d["analysis"]
    an = AffineAnalysis(a[0], a[1], tuple(tuple(o) for o in a[2]), a[3], a[4], a[5], a[6])
    rep = None
    if d["report"] is not None:
        r = d["report"]
        rep = MagnusReport(r[0], r[1], r[2], r[3], r[4],
                           tuple(r[5]) if r[5] else None, tuple(r[6]) if r[6] else None)
    return SearchRow(d["q"], d["g0"], d["order"], an, d["mp"], d["smp"], d["how"], rep, None, tuple(d["key"]))


def search_group(row: SearchRow) -> Group:
    """Rebuild ``V x| G0`` for a search row."""
    d, s, k = row.key
    return affine_semidirect(row.q, GammaSubgroup(row.q, d, s, k).generators())


# ---------------------------------------------------------------------------
# irreducible subgroups of GL(2,p)


@dataclass
class LinearSubgroup:
    p: int
    gens: tuple[int, ...]  # element indices in gl2(p)
    order: int
    analysis: AffineAnalysis


def _gl2_vector_perms(p: int, gens) -> list[np.ndarray]:
    """Generator actions on all ``p*p`` vectors (0 fixed)."""
    L = gl2(p)
    return [np.concatenate([[0], L.perm(int(g)) + 1]) for g in gens]


def irreducible_linear_subgroups(p: int) -> list[LinearSubgroup]:
    """Subgroups of ``GL(2,p)`` fixing no line, with their orbit data."""
    L = gl2(p)
    lat = subgroup_lattice(L)
    lines = lines_of(p)
    neg = np.array([((-(v % p)) % p) + p * ((-(v // p)) % p) for v in range(p * p)])
    out = []
    for H, gens in zip(lat.subgroups, lat.gens):
        invariant = False
        for ln in lines:
            ls = set(ln.tolist())
            if all(set(L.perm(int(g))[ln].tolist()) == ls for g in gens):
                invariant = True
                break
        if invariant:
            continue
        perms = _gl2_vector_perms(p, gens)
        arr = np.stack(perms) if perms else np.zeros((0, p * p), dtype=np.int64)
        an = analyse_action(p, 2, arr, H.size, neg)
        out.append(LinearSubgroup(p, tuple(int(g) for g in gens), H.size, an))
    out.sort(key=lambda h: (h.order, h.gens))
    return out


def _dedupe(groups: list[Group]) -> list[Group]:
    out: list[Group] = []
    for G in groups:
        if not any(bool(is_isomorphic(G, H)) for H in out):
            out.append(G)
    return out


def irreducible_subgroups_gl2(p: int, mp_only: bool = False) -> list[Group]:
    """Irreducible subgroups of ``GL(2,p)`` up to isomorphism, optionally only the MP ones."""
    found = []
    for H in irreducible_linear_subgroups(p):
        G = build_from_permutations(p * p - 1, [gl2(p).perm(g) for g in H.gens])
        if mp_only and not magnus_status(G).mp:
            continue
        found.append(G)
    return _dedupe(found)


def gl2_search(p: int, prune: bool = True) -> list[SearchRow]:
    """``F_p^2 x| H`` for every irreducible ``H <= GL(2,p)``, one row per subgroup."""
    rows = []
    L = gl2(p)
    for H in irreducible_linear_subgroups(p):
        perms = [L.perm(g) for g in H.gens]
        try:
            mp, smp, how, rep, G = _verdict(
                perms, p * p - 1, H.analysis, lambda: affine_from_linear(p, L, H.gens), prune
            )
        except ResourceCapError:
            mp = smp = None
            how, rep, G = "cap", None, None
        rows.append(SearchRow(p * p, f"GL(2,{p}) subgroup {list(H.gens)}", H.order, H.analysis,
                              mp, smp, how, rep, G, H.gens))
    return rows


# ---------------------------------------------------------------------------
# arithmetic lemmas


@dataclass(frozen=True)
class DegreeBound:
    cyclic_mp_orders: tuple[int, ...]
    m_max: int
    phi_m_max: int
    bound: int


@lru_cache(maxsize=None)
def degree_bound(cyclic_limit: int = 50, phi_limit: int = 200) -> DegreeBound:
    """Largest degree an MP collineation group of the affine line can have."""
    orders = tuple(m for m in range(1, cyclic_limit + 1) if magnus_status(cyclic(m)).mp)
    ell = max(orders)
    m_max = max(m for m in range(1, phi_limit + 1) if euler_phi(m) <= 2 * ell)
    return DegreeBound(orders, m_max, euler_phi(m_max), 1 + 2 * m_max * ell)


def largest_with_phi_at_most(bound: int, limit: int = 200) -> int:
    return max(m for m in range(1, limit + 1) if euler_phi(m) <= bound)


def power23_solutions(a_max: int, b_max: int) -> set[tuple[int, int]]:
    """All ``(a, b)`` with ``|2**a - 3**b| == 1`` in the given ranges."""
    return {(a, b) for a in range(a_max + 1) for b in range(b_max + 1) if abs(2**a - 3**b) == 1}


# ---------------------------------------------------------------------------
# abelian groups


def partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def factorize(n: int) -> list[tuple[int, int]]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def abelian_types(order: int) -> list[tuple[int, ...]]:
    """Primary decompositions (prime-power cyclic orders, ascending) of every abelian group of this order."""
    per_prime = []
    for p, e in factorize(order):
        per_prime.append([tuple(sorted(p**k for k in part)) for part in partitions(e)])
    out = [()]
    for opts in per_prime:
        out = [a + b for a in out for b in opts]
    return sorted(tuple(sorted(t)) for t in out)


def abelian_expr(parts: tuple[int, ...]) -> str:
    if not parts:
        return "C(1)"
    return " x ".join(f"C({m})" for m in parts)


def abelian_group(parts: tuple[int, ...]) -> Group:
    G = build_direct_product([cyclic(m) for m in parts] or [cyclic(1)])
    G.name = abelian_expr(parts)
    return G


def abelian_shape_ok(parts: tuple[int, ...]) -> bool:
    """``C2^n x C3^m`` or ``C2^n x C4^m``."""
    s = set(parts)
    return s <= {2, 3} or s <= {2, 4}


@dataclass
class AbelianRow:
    parts: tuple[int, ...]
    mp: bool
    smp: bool
    shape_ok: bool


def abelian_survey(order_max: int) -> list[AbelianRow]:
    rows = []
    for n in range(1, order_max + 1):
        for parts in abelian_types(n):
            rep = magnus_status(abelian_group(parts))
            rows.append(AbelianRow(parts, rep.mp, rep.smp, abelian_shape_ok(parts)))
    return rows
