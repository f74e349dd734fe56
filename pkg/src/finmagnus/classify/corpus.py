"""The fixed universe of groups the property suites run over.

Every member is named by a group expression, so any failure can be rebuilt
with ``cli.dsl.build`` alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from ..cli.dsl import build
from ..core import Group
from ..iso import fingerprint, is_isomorphic
from ..magnus import magnus_status
from ..structure import all_normal_subgroups, is_abelian
from .search import abelian_expr, abelian_types, gammal1_search, search_group

PRIMITIVE_MP = ("C(2)", "C(3)", "S(3)", "A(4)", "AGL(1,5)", "C7:C3", "AGL(1,7)", "M9")
PRIMITIVE_SMP = ("C(2)", "S(3)", "M9")

ATOMS = (
    "C(1)", "C(2)", "C(3)", "C(4)", "C(6)", "C(8)", "C(12)",
    "E(2,2)", "E(2,3)", "E(3,2)", "E(5,2)",
    "S(3)", "S(4)", "A(4)", "A(5)",
    "D(8)", "D(10)", "D(12)", "Q8", "QD16", "M9", "C7:C3",
    "AGL(1,3)", "AGL(1,4)", "AGL(1,5)", "AGL(1,7)", "AGL(1,8)", "AGL(1,9)",
    "AGammaL(1,4)", "AGammaL(1,8)", "AGammaL(1,9)", "AGammaL(1,16)",
    "GammaL(1,4)", "GammaL(1,8)", "GammaL(1,9)",
)

ABELIAN_MAX = 128
CROWN_MAX_K = 3
CROWN_ORDER_CAP = 10_000
SEARCH_QMAX = 64
SEARCH_ORDER_CAP = 2000
QUOTIENT_SOURCE_CAP = 6000


@dataclass(frozen=True)
class Member:
    expr: str
    family: str  # abelian, atom, pair, crown, search, quotient


@lru_cache(maxsize=None)
def group_of(expr: str) -> Group:
    """Build (once) the group an expression names."""
    return build(expr)


def perm_expr(G: Group) -> str:
    """``Perm[...]`` text for a permutation group's generators (points shifted to start at 0)."""
    parts = []
    for g in G.generators:
        img = G.perm(int(g)).tolist()
        seen = [False] * len(img)
        cycles = []
        for s in range(len(img)):
            if seen[s] or img[s] == s:
                continue
            c = []
            x = s
            while not seen[x]:
                seen[x] = True
                c.append(x)
                x = img[x]
            cycles.append("(" + ",".join(map(str, c)) + ")")
        if cycles:
            parts.append("".join(cycles))
    return "Perm[" + ", ".join(parts) + "]"


def crown_exprs() -> list[str]:
    out = []
    for L in PRIMITIVE_MP:
        base = group_of(L)
        for k in range(2, CROWN_MAX_K + 1):
            mn = all_normal_subgroups(base)
            # order of the crown power is |V|^(k-1) |L| with V the socle
            v = min(N.size for N in mn if N.size > 1)
            if v ** (k - 1) * base.order <= CROWN_ORDER_CAP:
                out.append(f"Crown({L}, {k})")
    return out


def search_exprs(qmax: int = SEARCH_QMAX) -> list[str]:
    from ..structure import prime_power

    out = []
    for q in range(2, qmax + 1):
        if prime_power(q) is None:
            continue
        for row in gammal1_search(q):
            if row.g0_order * q <= SEARCH_ORDER_CAP:
                out.append(perm_expr(search_group(row)))
    return out


def _base_members() -> list[Member]:
    members = []
    for n in range(1, ABELIAN_MAX + 1):
        for parts in abelian_types(n):
            members.append(Member(abelian_expr(parts), "abelian"))
    members += [Member(a, "atom") for a in ATOMS]
    for a, b in combinations_with_replacement(PRIMITIVE_MP, 2):
        members.append(Member(f"{a} x {b}", "pair"))
    members += [Member(e, "crown") for e in crown_exprs()]
    members += [Member(e, "search") for e in search_exprs()]
    return members


class _IsoIndex:
    """Buckets groups by fingerprint so only plausible pairs reach the backtracker."""

    def __init__(self) -> None:
        self.buckets: dict[tuple, list[Group]] = {}

    def add_if_new(self, G: Group) -> bool:
        bucket = self.buckets.setdefault(fingerprint(G), [])
        for H in bucket:
            if is_isomorphic(G, H).verdict is not False:
                return False
        bucket.append(G)
        return True


@lru_cache(maxsize=None)
def corpus() -> tuple[Member, ...]:
    """Base families followed by their quotients, quotients deduplicated up to isomorphism.

    Abelian members are not expanded: their quotients are abelian of smaller
    order and already present.
    """
    base = _base_members()
    index = _IsoIndex()
    for m in base:
        index.add_if_new(group_of(m.expr))
    extra = []
    for m in base:
        if m.family == "abelian":
            continue
        G = group_of(m.expr)
        if G.order > QUOTIENT_SOURCE_CAP or is_abelian(G):
            continue
        normals = all_normal_subgroups(G)
        by_order: dict[int, int] = {}
        for N in normals:
            i = by_order.get(N.size, 0)
            by_order[N.size] = i + 1
            if N.size == 1 or N.size == G.order:
                continue
            expr = f"Quot({m.expr}, {N.size}, {i})"
            Q = group_of(expr)
            if index.add_if_new(Q):
                extra.append(Member(expr, "quotient"))
    return tuple(base + extra)


def mp_members(max_order: int | None = None) -> list[Member]:
    """Corpus members with the Magnus property, optionally bounded by order."""
    out = []
    for m in corpus():
        G = group_of(m.expr)
        if max_order is not None and G.order > max_order:
            continue
        if magnus_status(G, cross_check=False).mp:
            out.append(m)
    return out
