"""Deciding the Magnus property by counting classes against normal closures."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Group, conjugacy_classes
from .structure import class_closures, normal_closure

ORACLE_CAP = 2000


@dataclass(frozen=True)
class MagnusReport:
    mp: bool
    smp: bool
    a_count: int
    b_count: int
    all_real: bool
    witness: tuple[int, int] | None = None  # elements (x, y)
    witness_classes: tuple[int, int] | None = None

    def as_dict(self) -> dict:
        return {
            "mp": self.mp,
            "smp": self.smp,
            "aCount": self.a_count,
            "bCount": self.b_count,
            "allReal": self.all_real,
            "witness": list(self.witness) if self.witness else None,
        }


@dataclass
class MagnusSets:
    A: list[tuple[int, ...]]  # class-index orbits under inversion
    B: list  # distinct normal closures, first-seen order
    closure_of_class: list[int]  # position in B for each class


def magnus_sets(G: Group) -> MagnusSets:
    cd = conjugacy_classes(G)
    A = []
    for c in range(cd.count):
        d = int(cd.inverse_class[c])
        if c <= d:
            A.append((c,) if c == d else (c, d))
    closures = class_closures(G)
    B = []
    where: dict[bytes, int] = {}
    of_class = []
    for C in closures:
        if C.key not in where:
            where[C.key] = len(B)
            B.append(C)
        of_class.append(where[C.key])
    # closures of inverse classes coincide, so A -> B is well defined and onto
    for orbit in A:
        assert len({of_class[c] for c in orbit}) == 1
    assert {of_class[o[0]] for o in A} == set(range(len(B)))
    return MagnusSets(A, B, of_class)


def _witness(G: Group, sets: MagnusSets) -> tuple[int, int] | None:
    cd = conjugacy_classes(G)
    k = cd.count
    for x in range(k):
        for y in range(x + 1, k):
            if sets.closure_of_class[x] == sets.closure_of_class[y] and y != cd.inverse_class[x]:
                return (x, y)
    return None


def magnus_status(G: Group, cross_check: bool = True) -> MagnusReport:
    """MP/SMP verdict; groups up to ``ORACLE_CAP`` elements are re-checked pairwise."""

    def compute() -> MagnusReport:
        cd = conjugacy_classes(G)
        sets = magnus_sets(G)
        a, b = len(sets.A), len(sets.B)
        mp = a == b
        all_real = bool(np.all(cd.inverse_class == np.arange(cd.count)))
        wc = None if mp else _witness(G, sets)
        w = None if wc is None else (int(cd.reps[wc[0]]), int(cd.reps[wc[1]]))
        return MagnusReport(mp, mp and all_real, a, b, all_real, w, wc)

    rep = G.cached("magnus", compute)
    if cross_check and G.order <= ORACLE_CAP:
        oracle = G.cached("magnus_pairwise", lambda: magnus_pairwise(G))
        if oracle != (rep.mp, rep.smp):
            raise AssertionError(f"counting verdict {rep.mp, rep.smp} disagrees with pairwise {oracle}")
    return rep


def _class_of_element(G: Group, x: int) -> np.ndarray:
    """Brute-force conjugacy class of ``x``: ``{g^-1 x g}``."""
    e = G.elements
    left = G.mul_vec(G.inverse_of, np.int64(x))
    mask = np.zeros(G.order, dtype=bool)
    mask[G.mul_vec(left, e)] = True
    return mask


def magnus_pairwise(G: Group) -> tuple[bool, bool]:
    """The definition, directly: equal normal closures force conjugacy up to inversion.

    Uses generic normal closures and brute-force conjugation rather than the
    cached class data, so it is an independent check of ``magnus_status``.
    """
    seen = np.zeros(G.order, dtype=bool)
    reps = []
    for x in range(G.order):
        if not seen[x]:
            cls = _class_of_element(G, x)
            seen |= cls
            reps.append((x, cls))
    closures = [normal_closure(G, [x]).key for x, _ in reps]
    inv = G.inverse_of
    mp = smp = True
    for i, (x, cx) in enumerate(reps):
        real = bool(cx[inv[x]])
        smp &= real
        for j in range(i + 1, len(reps)):
            y = reps[j][0]
            if closures[i] == closures[j] and not (cx[y] or cx[inv[y]]):
                mp = False
    return mp, mp and smp
