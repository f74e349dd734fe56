"""Orbit analysis of linear groups on F_q, and Frobenius decompositions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..core import ElementSet, Group, centralizer
from ..fields import SemilinearMap, finite_field
from ..structure import is_normal


def rank_mod_p(vectors: np.ndarray, p: int) -> int:
    """Rank over F_p of the rows of an integer matrix."""
    m = np.array(vectors, dtype=np.int64) % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i, c]), None)
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        nz = np.flatnonzero(m[:, c])
        for i in nz:
            if i != r:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        r += 1
        if r == rows:
            break
    return r


@dataclass(frozen=True)
class AffineAnalysis:
    q: int
    g0_order: int
    orbits: tuple[tuple[int, ...], ...]  # orbits of G0 on F_q, {0} first
    rank: int
    two_transitive: bool
    mp_hypothesis: bool
    irreducible: bool

    @property
    def orbit_sizes(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)


def analyse_action(p: int, n: int, perms: np.ndarray, g0_order: int, neg: np.ndarray) -> AffineAnalysis:
    """Orbit data for maps ``perms`` of ``F_p^n`` (points indexed by base-p digits) fixing 0."""
    q = p**n
    labels = kernels.orbit_labels(np.ascontiguousarray(perms, dtype=np.int32), q)
    groups: dict[int, list[int]] = {}
    for v, lab in enumerate(labels.tolist()):
        groups.setdefault(lab, []).append(v)
    orbits = tuple(tuple(groups[k]) for k in sorted(groups))
    nonzero = [o for o in orbits if o[0] != 0]
    if len(nonzero) == 1:
        hyp = True
    elif len(nonzero) == 2:
        hyp = int(neg[nonzero[0][0]]) in set(nonzero[1])
    else:
        hyp = False
    weights = p ** np.arange(n)
    irreducible = True
    for o in nonzero:
        digits = (np.asarray(o)[:, None] // weights[None, :]) % p
        if rank_mod_p(digits, p) < n:
            irreducible = False
            break
    return AffineAnalysis(
        q=q,
        g0_order=g0_order,
        orbits=orbits,
        rank=len(orbits),
        two_transitive=len(nonzero) == 1,
        mp_hypothesis=hyp,
        irreducible=irreducible,
    )


def affine_analysis(q: int, gens: list[SemilinearMap], g0_order: int | None = None) -> AffineAnalysis:
    """Orbits of ``G0 = <gens>`` on ``F_q`` with the derived flags."""
    F = finite_field(q)
    perms = np.stack([g.as_array() for g in gens]) if gens else np.zeros((0, q), dtype=np.int64)
    if g0_order is None:
        from ..core import build_from_permutations

        g0_order = build_from_permutations(q, list(perms)).order
    return analyse_action(F.p, F.n, perms, g0_order, F.neg)


@dataclass(frozen=True)
class FrobeniusDecomposition:
    kernel: ElementSet
    complement: ElementSet


def is_frobenius(G: Group, dec: FrobeniusDecomposition) -> bool:
    """``N`` normal, ``NH = G``, ``N & H = 1``, and ``C_N(h) = 1`` for every ``h != 1`` in ``H``."""
    N, H = dec.kernel, dec.complement
    if N.size * H.size != G.order or (N & H).size != 1 or not is_normal(G, N):
        return False
    if N.size == 1 or H.size == 1:
        return False
    for h in H.indices()[1:]:
        if (centralizer(G, [int(h)]) & N).size != 1:
            return False
    return True


def affine_decomposition(G: Group) -> FrobeniusDecomposition:
    """Translations and point stabilizer of an affine permutation group."""
    return FrobeniusDecomposition(G.translations, G.stabilizer)
