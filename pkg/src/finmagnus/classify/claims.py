"""Named verification suites.

``verify(claim_id, **params)`` runs one suite and returns a ``ClaimReport``.
Every failed assertion records a witness: a group expression plus whatever
element indices or subgroup orders reproduce it through the library.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable

import numpy as np


from ..core import ElementSet, Group, build_direct_product, conjugacy_classes, element_orders, subgroup_as_group
from ..errors import ResourceCapError
from ..iso import fingerprint, is_isomorphic
from ..lattice import SOLVABLE_ORDER_CAP, frattini, is_primitive, j_p, s_p
from ..magnus import ORACLE_CAP, MagnusReport, magnus_status
from ..structure import (
    all_normal_subgroups,
    chief_factor_action,
    chief_series,
    derived_series,
    factor_semidirect,
    fitting_height,
    is_abelian,
    is_nilpotent,
    is_solvable,
    minimal_normal_subgroups,
    prime_factors,
    prime_power,
    quotient,
    socle,
)
from .affine import FrobeniusDecomposition, affine_analysis, affine_decomposition, is_frobenius
from .corpus import CROWN_ORDER_CAP, PRIMITIVE_MP, PRIMITIVE_SMP, corpus, group_of, mp_members
from .search import (
    abelian_survey,
    degree_bound,
    euler_phi,
    gammal1_search,
    gl2_search,
    largest_with_phi_at_most,
    power23_solutions,
    search_group,
)

SCHEMA = 1
GL2_PRIMES = (2, 3, 5, 7)
TRUSTED_DEGREES = (81, 121, 529)
EXCEPTIONS = ("AGammaL(1,4)", "AGammaL(1,8)", "AGammaL(1,9)", "AGammaL(1,16)")
HUPPERT_ORDER_CAP = 400
TRIPLE_ORDER_CAP = 4000
PRODUCT_ORDER_CAP = 6000
SMP_PRODUCT_CAP = 1500
FRATTINI_SAMPLE_CAP = 2000


@dataclass
class ClaimReport:
    claim: str
    status: str  # "pass", "fail" or "inconclusive"
    evidence: list[str] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)
    runtime: float = 0.0
    witnesses: list[dict] = field(default_factory=list)
    table: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self, timing: bool = False) -> dict:
        d = {
            "schema": SCHEMA,
            "claim": self.claim,
            "status": self.status,
            "counts": dict(sorted(self.counts.items())),
            "evidence": list(self.evidence),
            "witnesses": list(self.witnesses),
            "table": list(self.table),
        }
        if timing:
            d["runtime"] = round(self.runtime, 3)
        return d


class _Suite:
    def __init__(self, claim: str):
        self.claim = claim
        self.evidence: list[str] = []
        self.witnesses: list[dict] = []
        self.table: list[dict] = []
        self.counts: Counter = Counter()
        self.failed = False
        self.capped: list[str] = []

    def check(self, ok: bool, expr: str, detail: str, elements=None) -> bool:
        self.counts["assertions"] += 1
        if not ok:
            self.failed = True
            w = {"expr": expr, "detail": detail}
            if elements is not None:
                w["elements"] = [int(x) for x in elements]
            self.witnesses.append(w)
        return ok

    def note(self, text: str) -> None:
        self.evidence.append(text)


def _pmap(fn: Callable, items: list, jobs: int) -> list:
    """Order-preserving map, across processes when ``jobs > 1``."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _iso(G: Group, H: Group) -> bool:
    return bool(is_isomorphic(G, H))


def _match(G: Group, names) -> str | None:
    for nm in names:
        if _iso(G, group_of(nm)):
            return nm
    return None


# ---------------------------------------------------------------------------
# classification of primitive groups


def _search_cell(q: int) -> list[tuple]:
    return [
        (r.q, r.g0, r.key, r.mp, r.smp, r.decided_by, r.analysis.mp_hypothesis)
        for r in gammal1_search(q)
    ]


def _prime_powers(qmax: int) -> list[int]:
    return [q for q in range(2, qmax + 1) if prime_power(q) is not None]


@dataclass
class _Hit:
    source: str
    q: int
    g0: str
    group: Group
    smp: bool


def _primitive_hits(s: _Suite, qmax: int, jobs: int) -> list[_Hit]:
    from .search import SearchRow

    hits: list[_Hit] = []
    cells = _prime_powers(qmax)
    how: Counter = Counter()
    for rows in _pmap(_search_cell, cells, jobs):
        for q, g0, key, mp, smp, decided, _ in rows:
            how[decided] += 1
            if decided == "cap":
                s.capped.append(f"GammaL(1,{q}) subgroup {g0}")
            if mp:
                row = SearchRow(q, g0, 0, None, mp, smp, decided, key=tuple(key))
                hits.append(_Hit("GammaL", q, g0, search_group(row), bool(smp)))
    for p in GL2_PRIMES:
        for r in gl2_search(p):
            how[r.decided_by] += 1
            if r.decided_by == "cap":
                s.capped.append(f"GL(2,{p}) subgroup {r.g0}")
            if r.mp and s.check(r.group is not None, f"GL(2,{p}) {r.g0}", "MP row without a group"):
                hits.append(_Hit("GL2", r.q, r.g0, r.group, bool(r.smp)))
    s.counts["cells"] = len(cells) + len(GL2_PRIMES)
    for k, v in how.items():
        s.counts[f"decided_{k}"] = v
    s.counts["hits"] = len(hits)
    s.note(f"GammaL(1,q) subgroups searched for every prime power q <= {qmax}")
    s.note("irreducible subgroups of GL(2,p) enumerated for p in 2, 3, 5, 7 (degrees 4, 9, 25, 49)")
    s.note("degrees " + ", ".join(map(str, TRUSTED_DEGREES)) + " trusted to literature, not enumerated")
    return hits


def _classify_hits(s: _Suite, hits: list[_Hit], expected: tuple[str, ...]) -> None:
    found: dict[str, _Hit] = {}
    for h in hits:
        nm = _match(h.group, PRIMITIVE_MP)
        s.check(nm is not None, f"{h.source} q={h.q} {h.g0}", "MP hit not isomorphic to a listed group")
        if nm is not None:
            found.setdefault(nm, h)
    got = tuple(nm for nm in PRIMITIVE_MP if nm in found and (expected is PRIMITIVE_MP or found[nm].smp))
    for nm in expected:
        s.check(nm in got, nm, "listed group not found by the search")
    for nm in got:
        s.check(nm in expected, nm, "search found a group outside the list")
    for nm in PRIMITIVE_MP:
        if nm in found:
            h = found[nm]
            s.table.append({"group": nm, "q": h.q, "source": h.source, "g0": h.g0, "smp": h.smp})
    s.counts["distinct"] = len(got)


def _primitive_mp(s: _Suite, qmax: int = 64, jobs: int = 1, **_) -> None:
    hits = _primitive_hits(s, qmax, jobs)
    _classify_hits(s, hits, PRIMITIVE_MP)
    # every listed group but C2 and C3 is a Frobenius group
    seen = set()
    for h in hits:
        nm = _match(h.group, PRIMITIVE_MP)
        if nm is None or nm in seen or nm in ("C(2)", "C(3)"):
            continue
        seen.add(nm)
        dec = affine_decomposition(h.group)
        s.check(is_frobenius(h.group, dec), nm, "translations and point stabilizer do not form a Frobenius group")
    s.counts["frobenius"] = len(seen)


def _primitive_smp(s: _Suite, qmax: int = 64, jobs: int = 1, **_) -> None:
    hits = _primitive_hits(s, qmax, jobs)
    _classify_hits(s, [h for h in hits if h.smp], PRIMITIVE_SMP)


def _main1bis(s: _Suite, qmax: int = 64, jobs: int = 1, **_) -> None:
    from .search import GammaSubgroup

    for expr in EXCEPTIONS:
        q = int(expr.split(",")[1].rstrip(")"))
        an = affine_analysis(q, GammaSubgroup(q, 1, 1, 0).generators())
        G0 = group_of(f"GammaL(1,{q})")
        G = group_of(expr)
        g0_mp = magnus_status(G0).mp
        rep = magnus_status(G)
        s.check(an.irreducible, expr, "point stabilizer is reducible")
        s.check(an.mp_hypothesis, expr, "nonzero vectors fail the orbit condition")
        s.check(g0_mp, expr, "point stabilizer is not MP")
        s.check(not rep.mp, expr, "group is MP", rep.witness)
        s.table.append({"group": expr, "order": G.order, "orbitSizes": list(an.orbit_sizes),
                        "stabilizerMp": g0_mp, "mp": rep.mp, "witness": list(rep.witness) if rep.witness else None})
    s.check(_iso(group_of("AGammaL(1,4)"), group_of("S(4)")), "AGammaL(1,4)", "not isomorphic to S(4)")
    # within the search, every non-MP group meeting the hypotheses is one of the four
    exceptional = 0
    for rows in _pmap(_search_cell, _prime_powers(qmax), jobs):
        for q, g0, key, mp, smp, decided, hyp in rows:
            if decided == "cap":
                s.capped.append(f"GammaL(1,{q}) subgroup {g0}")
            if decided == "direct" and mp is False:
                from .search import SearchRow

                G = search_group(SearchRow(q, g0, 0, None, mp, smp, decided, key=tuple(key)))
                nm = _match(G, EXCEPTIONS)
                s.check(nm is not None, f"q={q} {g0}", "hypotheses hold, not MP, and not an exception")
                exceptional += 1
    s.counts["exceptional_rows"] = exceptional
    s.note("hypothesis read as: nonzero vectors conjugate or inverse-conjugate in the whole group")


# ---------------------------------------------------------------------------
# products and crowns


def _mpdir_expected(names: tuple[str, ...]) -> bool:
    special = ("C7:C3", "AGL(1,5)")
    for i, a in enumerate(names):
        if a not in special:
            continue
        for j, b in enumerate(names):
            if i == j:
                continue
            if not (a == b == "AGL(1,5)" or b in PRIMITIVE_SMP):
                return False
    return True


def _c3c4_quotient(G: Group) -> tuple[int, bool] | None:
    """Order of a normal subgroup with quotient ``C3 x C4``, and whether that quotient is MP."""
    target = group_of("C(3) x C(4)")
    for N in all_normal_subgroups(G):
        if N.size * 12 != G.order:
            continue
        Q, _ = quotient(G, N)
        if _iso(Q, target):
            return N.size, magnus_status(Q).mp
    return None


def _mpdir_pairs(s: _Suite, **_) -> None:
    for a, b in combinations_with_replacement(PRIMITIVE_MP, 2):
        expr = f"{a} x {b}"
        G = group_of(expr)
        rep = magnus_status(G)
        want = _mpdir_expected((a, b))
        s.check(rep.mp == want, expr, f"mp={rep.mp}, condition gives {want}", rep.witness)
        s.table.append({"product": expr, "order": G.order, "mp": rep.mp, "expected": want,
                        "witness": list(rep.witness) if rep.witness else None})
    s.counts["pairs"] = len(s.table)
    G = group_of("C7:C3 x AGL(1,5)")
    found = _c3c4_quotient(G)
    s.check(found is not None and not found[1], "C7:C3 x AGL(1,5)", "no non-MP quotient C(3) x C(4)")
    if found is not None:
        s.note(f"C7:C3 x AGL(1,5) has a quotient C(3) x C(4) by a normal subgroup of order {found[0]}, not MP")
    triples = 0
    for names in combinations_with_replacement(PRIMITIVE_MP, 3):
        order = 1
        for nm in names:
            order *= group_of(nm).order
        if order > TRIPLE_ORDER_CAP:
            continue
        expr = " x ".join(names)
        rep = magnus_status(group_of(expr))
        want = _mpdir_expected(names)
        s.check(rep.mp == want, expr, f"mp={rep.mp}, condition gives {want}", rep.witness)
        triples += 1
    s.counts["triples"] = triples
    # a non-MP factor spoils the product
    for bad in ("S(4)", "AGammaL(1,8)"):
        expr = f"{bad} x C(2)"
        s.check(not magnus_status(group_of(expr)).mp, expr, "product with a non-MP factor is MP")
    s.note("condition read exactly as stated; the pair table lists every verdict")


def _crown_quotients_ok(L: str, k: int) -> tuple[bool, int]:
    """``L_k`` modulo each of its minimal normal subgroups is ``L_{k-1}``; returns (ok, subgroups checked)."""
    G = group_of(f"Crown({L}, {k})")
    prev = group_of(L) if k == 2 else group_of(f"Crown({L}, {k - 1})")
    mins = minimal_normal_subgroups(G).subgroups
    for U in mins:
        if not _iso(quotient(G, U)[0], prev):
            return False, len(mins)
    return True, len(mins)


def _crown(s: _Suite, kmax: int = 3, **_) -> None:
    for L in PRIMITIVE_MP:
        base = group_of(L)
        lrep = magnus_status(base)
        V = minimal_normal_subgroups(base).subgroups[0]
        for k in range(2, kmax + 1):
            if V.size ** (k - 1) * base.order > CROWN_ORDER_CAP:
                continue
            expr = f"Crown({L}, {k})"
            G = group_of(expr)
            rep = magnus_status(G)
            if L == "M9":
                s.check(not rep.mp, expr, "crown power of M9 is MP")
            else:
                s.check(rep.mp == lrep.mp and rep.smp == lrep.smp, expr,
                        f"(mp, smp) = {(rep.mp, rep.smp)} but base has {(lrep.mp, lrep.smp)}", rep.witness)
            s.check(socle(G).size == V.size**k, expr, "socle is not V^k")
            ok, mins = _crown_quotients_ok(L, k)
            s.check(ok, expr, "a quotient by a minimal normal subgroup is not the (k-1)-crown")
            s.counts["minimal_normal_quotients"] += mins
            s.table.append({"crown": expr, "order": G.order, "mp": rep.mp, "smp": rep.smp,
                            "witness": list(rep.witness) if rep.witness else None})
    s.counts["crowns"] = len(s.table)
    if kmax >= 2:
        s.note("Crown(M9, 2) is not MP")


def _frobenius_factor(expr: str) -> FrobeniusDecomposition | None:
    """Socle with a complement, when the group is monolithic and the socle is complemented."""
    G = group_of(expr)
    mn = minimal_normal_subgroups(G)
    if not mn.monolithic:
        return None
    N = mn.subgroups[0]
    from ..lattice import all_subgroups

    for H in all_subgroups(G):
        if H.size * N.size == G.order and (H & N).size == 1:
            return FrobeniusDecomposition(N, H)
    return None


def _single_class(G: Group, N: ElementSet) -> bool:
    cd = conjugacy_classes(G)
    x = int(N.indices()[1])
    return int(cd.sizes[cd.class_of[x]]) == N.size - 1


def _fixed_point_free(G: Group, dec: FrobeniusDecomposition) -> bool:
    from ..core import centralizer

    return all((centralizer(G, [int(h)]) & dec.kernel).size == 1 for h in dec.complement.indices()[1:])


FROBENIUS_CANDIDATES = PRIMITIVE_MP + ("D(10)", "AGL(1,8)", "AGL(1,9)", "AGammaL(1,4)")


def _frobenius_products(s: _Suite, **_) -> None:
    decs = {e: _frobenius_factor(e) for e in FROBENIUS_CANDIDATES}
    hyp12 = {}
    for e, dec in decs.items():
        if dec is None:
            hyp12[e] = False
            continue
        G = group_of(e)
        hyp12[e] = _single_class(G, dec.kernel) and _fixed_point_free(G, dec)
    tuples = []
    for n in (2, 3):
        for names in combinations_with_replacement(FROBENIUS_CANDIDATES, n):
            order = 1
            for nm in names:
                order *= group_of(nm).order
            if order <= (PRODUCT_ORDER_CAP if n == 2 else TRIPLE_ORDER_CAP):
                tuples.append(names)
    applied = 0
    for names in tuples:
        if not all(hyp12[nm] for nm in names):
            continue
        comps = [subgroup_as_group(group_of(nm), decs[nm].complement)[0] for nm in names]
        L = build_direct_product(comps)
        if not magnus_status(L).mp:
            continue
        applied += 1
        expr = " x ".join(names)
        rep = magnus_status(group_of(expr))
        s.check(rep.mp, expr, "hypotheses hold but the product is not MP", rep.witness)
        s.table.append({"product": expr, "mp": rep.mp})
    s.counts["tuples"] = len(tuples)
    s.counts["hypotheses_hold"] = applied
    s.note("factors with class and fixed-point-free hypotheses: " + ", ".join(e for e in FROBENIUS_CANDIDATES if hyp12[e]))


def _distinct(members) -> list:
    """One corpus member per isomorphism type, first occurrence wins."""
    buckets: dict = {}
    out = []
    for m in members:
        G = group_of(m.expr)
        seen = buckets.setdefault(fingerprint(G), [])
        if not any(_iso(G, H) for H in seen):
            seen.append(G)
            out.append(m)
    return out


def _smp_products(s: _Suite, **_) -> None:
    members = _distinct(m for m in corpus() if group_of(m.expr).order <= 200)
    smp_b = [m for m in members if 1 < group_of(m.expr).order <= 72 and magnus_status(group_of(m.expr)).smp]
    pairs = 0
    for a in members:
        A = group_of(a.expr)
        ra = magnus_status(A, cross_check=False)
        for b in smp_b:
            B = group_of(b.expr)
            if A.order * B.order > SMP_PRODUCT_CAP:
                continue
            P = build_direct_product([A, B])
            rp = magnus_status(P, cross_check=False)
            expr = f"{a.expr} x {b.expr}" if a.family != "quotient" else f"({a.expr}) x {b.expr}"
            s.check(rp.mp == ra.mp, expr, f"mp(AxB)={rp.mp} but mp(A)={ra.mp}", rp.witness)
            s.check(rp.smp == ra.smp, expr, f"smp(AxB)={rp.smp} but smp(A)={ra.smp}")
            pairs += 1
    s.counts["pairs"] = pairs
    s.counts["factors"] = len(members)
    s.counts["smp_factors"] = len(smp_b)


# ---------------------------------------------------------------------------
# corpus-wide structure


def _mp_groups(max_order: int | None = None) -> list[tuple[str, Group]]:
    return [(m.expr, group_of(m.expr)) for m in mp_members(max_order)]


def _fitting(s: _Suite, **_) -> None:
    dl: Counter = Counter()
    for expr, G in _mp_groups():
        solv = is_solvable(G)
        s.check(solv, expr, "MP group is not solvable")
        if not solv:
            continue
        h = fitting_height(G)
        s.check(h <= 2, expr, f"Fitting height {h}")
        hf = fitting_height(_frattini_quotient(G))
        s.check(h == hf, expr, f"h(G)={h} but h(G/Phi)={hf}")
        dl[derived_series(G).derived_length] += 1
    s.counts["groups"] = sum(dl.values())
    s.table = [{"derivedLength": k, "groups": v} for k, v in sorted(dl.items())]
    s.note("derived-length table is informational only")


def _primes(s: _Suite, **_) -> None:
    for expr, G in _mp_groups():
        ps = set(prime_factors(G.order))
        s.check(ps <= {2, 3, 5, 7}, expr, f"prime divisors {sorted(ps)}")
        if is_nilpotent(G):
            s.counts["nilpotent"] += 1
            s.check(ps <= {2, 3}, expr, f"nilpotent with prime divisors {sorted(ps)}")
            if magnus_status(G).smp:
                s.check(ps <= {2}, expr, "nilpotent SMP group is not a 2-group")
        s.counts["groups"] += 1


def _has_quotient(G: Group, H: Group) -> bool:
    if G.order % H.order or (is_abelian(G) and not is_abelian(H)):
        return False
    # a quotient of derived length d kills the d-th derived subgroup
    ds, dh = derived_series(G), derived_series(H)
    if dh.solvable and ds.solvable and ds.derived_length < dh.derived_length:
        return False
    for N in all_normal_subgroups(G):
        if N.size * H.order == G.order and _iso(quotient(G, N)[0], H):
            return True
    return False


def _frattini_quotient(G: Group) -> Group:
    return quotient(G, frattini(G))[0]


def _prank(s: _Suite, **_) -> None:
    for expr, G in _mp_groups():
        F = _frattini_quotient(G)
        cs = chief_series(G)
        csf = chief_series(F)
        rev = chief_series(G, tie_break="greatest")
        s.check(sorted(cs.factor_orders()) == sorted(rev.factor_orders()), expr,
                "chief factor orders depend on the tie-break")
        bad = {2: _has_quotient(G, group_of("A(4)")), 3: _has_quotient(G, group_of("M9"))}
        for p in prime_factors(G.order):
            sp, rp = s_p(G, p), cs.p_rank(p)
            s.check(sp == rp, expr, f"S_{p}={sp} but r_{p}={rp}")
            s.check(rp <= 2, expr, f"r_{p}={rp}")
            s.check(csf.p_rank(p) == rp, expr, f"r_{p}(G/Phi)={csf.p_rank(p)} but r_{p}={rp}")
            if p in (5, 7):
                s.check(sp == rp == 1, expr, f"p={p}: S_p={sp}, r_p={rp}")
            if p in bad:
                s.check((sp == 1) == (not bad[p]), expr, f"S_{p}={sp} against quotient test {bad[p]}")
            s.counts["prime_checks"] += 1
        supersolvable = all(f.rank == 1 for f in cs.factors)
        fbad = _has_quotient(F, group_of("A(4)")) or _has_quotient(F, group_of("M9"))
        s.check(supersolvable == (not fbad), expr, "supersolvability disagrees with the quotient test on G/Phi")
        s.counts["groups"] += 1


CHIEF_MP = {2, 3, 4, 5, 7, 9}
CHIEF_SMP = {2, 3, 4, 9}


def _orbit_condition(U: Group, M: ElementSet) -> bool:
    """Nonidentity elements of ``M`` are conjugate or inverse-conjugate in ``U``."""
    cd = conjugacy_classes(U)
    cls = set(cd.class_of[M.indices()[1:]].tolist())
    if len(cls) == 1:
        return True
    if len(cls) == 2:
        a, b = sorted(cls)
        return int(cd.inverse_class[a]) == b
    return False


def _chief_orders(s: _Suite, **_) -> None:
    u_seen: dict[tuple, list[Group]] = {}
    for expr, G in _mp_groups():
        cs = chief_series(G)
        smp = magnus_status(G).smp
        for step, f in enumerate(cs.factors):
            s.check(f.order in CHIEF_MP, expr, f"chief factor of order {f.order} (step {step})")
            if smp:
                s.check(f.order in CHIEF_SMP, expr, f"SMP group with chief factor of order {f.order}")
            U = factor_semidirect(G, cs, step)
            bucket = u_seen.setdefault(fingerprint(U), [])
            if any(_iso(U, V) for V in bucket):
                continue
            bucket.append(U)
            M = minimal_normal_subgroups(U).subgroups[0]
            action = chief_factor_action(G, cs, step)
            s.check(M.size == f.order and is_primitive(U).primitive, expr,
                    f"M x| G/C_G(M) at step {step} is not primitive with socle of order {f.order}")
            s.check(magnus_status(action.image).mp, expr, f"G/C_G(M) at step {step} is not MP")
            s.check(_orbit_condition(U, M), expr, f"socle orbit condition fails at step {step}")
            if magnus_status(U).mp:
                s.check(_match(U, PRIMITIVE_MP) is not None, expr, f"MP group M x| G/C at step {step} not listed")
            else:
                s.check(_match(U, EXCEPTIONS) is not None, expr, f"non-MP M x| G/C at step {step} not exceptional")
        s.counts["groups"] += 1
    s.counts["distinct_U"] = sum(len(v) for v in u_seen.values())
    witnessed: dict[int, str] = {}
    for nm in PRIMITIVE_MP:
        for f in chief_series(group_of(nm)).factors:
            witnessed.setdefault(f.order, nm)
    for v in sorted(CHIEF_MP):
        s.check(v in witnessed, f"order {v}", "no listed primitive group has a chief factor of this order")
    s.table = [{"order": v, "witness": witnessed.get(v)} for v in sorted(CHIEF_MP)]


# ---------------------------------------------------------------------------
# p-rank lemmas over the whole corpus


def _solvable_members(max_order: int) -> list[tuple[str, Group]]:
    out = []
    for m in corpus():
        G = group_of(m.expr)
        if G.order <= max_order and is_solvable(G):
            out.append((m.expr, G))
    return out


def _srineq(s: _Suite, **_) -> None:
    for expr, G in _solvable_members(SOLVABLE_ORDER_CAP):
        if G.order == 1:
            continue
        F = _frattini_quotient(G)
        cs, csf = chief_series(G), chief_series(F)
        for p in prime_factors(G.order):
            sp, rp = s_p(G, p), cs.p_rank(p)
            s.check(1 <= sp <= rp, expr, f"S_{p}={sp}, r_{p}={rp}")
            s.check((rp == 1) == (csf.p_rank(p) == 1), expr, f"r_{p}={rp} but r_{p}(G/Phi)={csf.p_rank(p)}")
            s.check(sp == s_p(F, p), expr, f"S_{p}(G)={sp} but S_{p}(G/Phi)={s_p(F, p)}")
        s.counts["groups"] += 1


def _huppert(s: _Suite, **_) -> None:
    for expr, G in _solvable_members(HUPPERT_ORDER_CAP):
        cs = chief_series(G)
        for p in prime_factors(G.order):
            jp, rp = j_p(G, p), cs.p_rank(p)
            s.check(jp == rp, expr, f"j_{p}={jp} but r_{p}={rp}")
        s.counts["groups"] += 1


def _chief_chain(G: Group, lower: ElementSet, upper: ElementSet) -> list[ElementSet]:
    """A chain of normal subgroups from ``lower`` to ``upper`` with minimal steps."""
    from ..structure import join_normal

    cd = conjugacy_classes(G)
    chain = [lower]
    cur = lower
    while cur.size < upper.size:
        best = None
        for x in cd.reps.tolist():
            if not upper.mask[x] or cur.mask[x]:
                continue
            J = join_normal(G, cur, int(x))
            if best is None or J.size < best.size:
                best = J
        chain.append(best)
        cur = best
    return chain


def _frattini_lemma(s: _Suite, **_) -> None:
    from ..core import centralizer
    from ..structure import factor_centralizer

    for expr, G in _solvable_members(FRATTINI_SAMPLE_CAP):
        if is_abelian(G):
            continue
        phi = frattini(G)
        normals = all_normal_subgroups(G)
        for N in minimal_normal_subgroups(G).subgroups:
            if not N.issubset(phi):
                continue
            p = prime_power(N.size)[0]
            CN = centralizer(G, N)
            for K in normals:
                if not N.issubset(K) or K.size == N.size:
                    continue
                chain = _chief_chain(G, N, K)
                ok = True
                for lo, hi in zip(chain, chain[1:]):
                    pp = prime_power(hi.size // lo.size)
                    if pp[0] == p and not K.issubset(factor_centralizer(G, lo, hi)):
                        ok = False
                        break
                if not ok:
                    continue
                s.counts["instances"] += 1
                s.check(K.issubset(CN), expr, f"K of order {K.size} fails to centralize N of order {N.size}")
        s.counts["groups"] += 1
    s.note("abelian groups skipped: the conclusion holds trivially there")


# ---------------------------------------------------------------------------
# arithmetic and abelian groups


def _power23(s: _Suite, a_max: int = 60, b_max: int = 40, **_) -> None:
    got = power23_solutions(a_max, b_max)
    want = {(1, 0), (1, 1), (2, 1), (3, 2)}
    s.check(got == want, f"power23({a_max},{b_max})", f"solutions {sorted(got)}")
    s.table = [{"a": a, "b": b} for a, b in sorted(got)]


def _degree_bound(s: _Suite, **_) -> None:
    d = degree_bound()
    s.check(d.cyclic_mp_orders == (1, 2, 3, 4, 6), "degree_bound", f"cyclic MP orders {d.cyclic_mp_orders}")
    s.check(d.m_max == 42 and euler_phi(42) == 12, "degree_bound", f"m_max={d.m_max}")
    s.check(d.bound == 505, "degree_bound", f"bound={d.bound}")
    s.check(largest_with_phi_at_most(2) == 6, "degree_bound", "largest m with phi(m) <= 2 is not 6")
    s.table = [{"cyclicMpOrders": list(d.cyclic_mp_orders), "mMax": d.m_max, "bound": d.bound}]


def _abelian(s: _Suite, order_max: int = 128, **_) -> None:
    from .search import abelian_expr

    for row in abelian_survey(order_max):
        s.check(row.mp == row.shape_ok, abelian_expr(row.parts), f"mp={row.mp}, shape test {row.shape_ok}")
        s.counts["groups"] += 1
        s.counts["mp"] += int(row.mp)


# ---------------------------------------------------------------------------
# counting criterion and quotient closure


def _oracle(s: _Suite, **_) -> None:
    for m in corpus():
        G = group_of(m.expr)
        if G.order > ORACLE_CAP:
            continue
        try:
            magnus_status(G, cross_check=True)
        except AssertionError as exc:
            s.check(False, m.expr, str(exc))
        else:
            s.check(True, m.expr, "")
        s.counts["groups"] += 1


def _coset_order_histogram(G: Group, powers: np.ndarray, N: ElementSet) -> tuple:
    """Element-order counts of ``G/N`` read off a powers table, without building the quotient."""
    inside = N.mask[powers]  # inside[k, x]: x**k in N
    first = np.argmax(inside[1:], axis=0) + 1
    vals, cnts = np.unique(first, return_counts=True)
    return tuple(zip(vals.tolist(), (cnts // N.size).tolist()))


def _powers(G: Group) -> np.ndarray:
    e = int(np.lcm.reduce(element_orders(G)))
    rows = [np.zeros(G.order, dtype=np.int64), G.elements.astype(np.int64)]
    for _ in range(e - 1):
        rows.append(G.mul_vec(rows[-1], G.elements))
    return np.stack(rows)


def _quotients(s: _Suite, **_) -> None:
    for expr, G in _mp_groups():
        s.check(is_solvable(G), expr, "MP group is not solvable")
        smp = magnus_status(G).smp
        # abelian quotients are determined up to isomorphism by their order statistics
        seen: dict[tuple, MagnusReport] = {}
        powers = _powers(G) if is_abelian(G) else None
        for i, N in enumerate(all_normal_subgroups(G)):
            if N.size in (1, G.order):
                continue
            key = _coset_order_histogram(G, powers, N) if powers is not None else None
            rep = seen.get(key) if key is not None else None
            if rep is None:
                rep = magnus_status(quotient(G, N)[0], cross_check=False)
                if key is not None:
                    seen[key] = rep
                    s.counts["abelian_types"] += 1
            s.check(rep.mp and (rep.smp or not smp), expr,
                    f"quotient by normal subgroup #{i} of order {N.size} has mp={rep.mp}, smp={rep.smp}")
            s.counts["quotients"] += 1
        s.counts["groups"] += 1


SUITES: dict[str, Callable] = {
    "primitive-mp": _primitive_mp,
    "primitive-smp": _primitive_smp,
    "main1bis": _main1bis,
    "mpdir-pairs": _mpdir_pairs,
    "crown": _crown,
    "frobenius-products": _frobenius_products,
    "smp-products": _smp_products,
    "fitting": _fitting,
    "primes": _primes,
    "prank": _prank,
    "chief-orders": _chief_orders,
    "power23": _power23,
    "srineq": _srineq,
    "huppert": _huppert,
    "abelian": _abelian,
    "degree-bound": _degree_bound,
    "frattini-lemma": _frattini_lemma,
    "oracle": _oracle,
    "quotients": _quotients,
}

CLAIMS = tuple(SUITES)


def verify(claim: str, **params) -> ClaimReport:
    """Run one suite; resource caps make the report inconclusive rather than passing."""
    if claim not in SUITES:
        raise KeyError(f"unknown claim {claim!r}; known: {', '.join(CLAIMS)}")
    s = _Suite(claim)
    t0 = time.perf_counter()
    try:
        SUITES[claim](s, **params)
    except ResourceCapError as exc:
        s.capped.append(str(exc))
    runtime = time.perf_counter() - t0
    if s.failed:
        status = "fail"
    elif s.capped:
        status = "inconclusive"
        s.note("resource cap reached: " + "; ".join(s.capped[:5]))
    else:
        status = "pass"
    return ClaimReport(claim, status, s.evidence, dict(s.counts), runtime, s.witnesses, s.table)
