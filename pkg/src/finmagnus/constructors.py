"""Builders for the named groups and families used throughout the package."""

from __future__ import annotations

import re
from functools import lru_cache

import numpy as np

from .core import (
    COMPOSITE_CAP,
    DENSE_CAP,
    DenseGroup,
    ElementSet,
    Group,
    PermGroup,
    ProductGroup,
    build_from_permutations,
    build_direct_product,
    perm_from_cycles,
)
from .errors import NotMonolithic, NotPrimePower, OrderCapExceeded, ParameterError, UnknownAtom
from .fields import SemilinearMap, finite_field
from .structure import minimal_normal_subgroups, prime_power

# ---------------------------------------------------------------------------
# small table-defined families


def cyclic(m: int) -> DenseGroup:
    if m < 1:
        raise ParameterError("C(m) needs m >= 1")
    if m > DENSE_CAP:
        raise OrderCapExceeded(f"C({m}) exceeds the dense cap {DENSE_CAP}")
    i = np.arange(m)
    gens = [1] if m > 1 else []
    return DenseGroup((i[:, None] + i[None, :]) % m, name=f"C({m})", generators=gens)


def _metacyclic(m: int, mult: int, square: int | None, name: str) -> DenseGroup:
    """``<r, s | r^m, s^2 = r^square (or 1), s r s^-1 = r^mult>``; element ``r^a s^b`` is ``a + m*b``."""
    n = 2 * m
    x = np.arange(n)
    a, b = x % m, x // m
    A, B = a[:, None], b[:, None]
    C, D = a[None, :], b[None, :]
    twist = np.where(B == 1, mult % m, 1)
    exp = A + twist * C
    if square is not None:
        exp = exp + np.where((B == 1) & (D == 1), square, 0)
    s_part = (B + D) % 2
    table = (exp % m) + m * s_part
    gens = [1 % m if m > 1 else 0, m]
    return DenseGroup(table, name=name, generators=[g for g in dict.fromkeys(gens) if g])


def dihedral(order: int) -> DenseGroup:
    """Dihedral group with ``order`` elements."""
    if order < 2 or order % 2:
        raise ParameterError("D(2m) needs an even order >= 2")
    m = order // 2
    return _metacyclic(m, -1, None, f"D({order})")


def quaternion8() -> DenseGroup:
    return _metacyclic(4, -1, 2, "Q8")


def semidihedral16() -> DenseGroup:
    return _metacyclic(8, 3, None, "QD16")


def elementary_abelian(p: int, k: int) -> Group:
    if prime_power(p) != (p, 1):
        raise ParameterError("E(p,k) needs a prime p")
    if k < 0:
        raise ParameterError("E(p,k) needs k >= 0")
    if k == 0:
        return cyclic(1)
    if k == 1:
        return cyclic(p)
    G = build_direct_product([cyclic(p)] * k)
    G.name = f"E({p},{k})"
    return G


def symmetric(m: int) -> PermGroup:
    if m < 1:
        raise ParameterError("S(m) needs m >= 1")
    gens = []
    if m >= 2:
        gens = [perm_from_cycles(m, [(0, 1)]), perm_from_cycles(m, [tuple(range(m))])]
    return build_from_permutations(m, gens, name=f"S({m})")


def alternating(m: int) -> PermGroup:
    if m < 1:
        raise ParameterError("A(m) needs m >= 1")
    gens = []
    if m >= 3:
        gens = [perm_from_cycles(m, [(0, 1, 2)])]
        if m > 3:
            cyc = tuple(range(m)) if m % 2 else tuple(range(1, m))
            gens.append(perm_from_cycles(m, [cyc]))
    return build_from_permutations(m, gens, name=f"A({m})")


# ---------------------------------------------------------------------------
# affine groups on F_p^2 and F_q


def _vec_index(p: int, x: int, y: int) -> int:
    return x % p + p * (y % p)


def matrix_perm(p: int, M, nonzero: bool = False) -> np.ndarray:
    """Action ``v -> M v`` on column vectors ``(x, y)`` with index ``x + p*y``."""
    (a, b), (c, d) = M
    pts = range(1, p * p) if nonzero else range(p * p)
    out = []
    for v in pts:
        x, y = v % p, v // p
        out.append(_vec_index(p, a * x + b * y, c * x + d * y))
    arr = np.asarray(out, dtype=np.int64)
    return arr - 1 if nonzero else arr


def translation_perms(p: int, n: int) -> list[np.ndarray]:
    """Translations by the basis vectors of ``F_p^n`` (index = base-p digits)."""
    q = p**n
    v = np.arange(q)
    out = []
    for i in range(n):
        dig = (v // p**i) % p
        out.append(v + ((dig + 1) % p - dig) * p**i)
    return out


def _mat_mul(A, B, p):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(2)) % p for j in range(2)) for i in range(2)
    )


M9_I = ((0, 2), (1, 0))
M9_J = ((1, 1), (1, 2))


def m9() -> PermGroup:
    """``F_3^2`` extended by the quaternion group generated by ``M9_I`` and ``M9_J``."""
    p = 3
    minus = ((2, 0), (0, 2))
    ij, ji = _mat_mul(M9_I, M9_J, p), _mat_mul(M9_J, M9_I, p)
    if _mat_mul(M9_I, M9_I, p) != minus or _mat_mul(M9_J, M9_J, p) != minus:
        raise AssertionError("i^2 = j^2 = -1 fails")
    if ij != tuple(tuple((-x) % p for x in row) for row in ji):
        raise AssertionError("ij = -ji fails")
    gens = translation_perms(3, 2) + [matrix_perm(3, M9_I), matrix_perm(3, M9_J)]
    G = build_from_permutations(9, gens, name="M9")
    return _mark_affine(G, 9)


def c7c3() -> PermGroup:
    return affine_semidirect(7, [SemilinearMap(7, 2)], name="C7:C3")


def _mark_affine(G: PermGroup, q: int) -> PermGroup:
    """Attach the translation subgroup and the stabilizer of 0 as ElementSets."""
    perms = G.perms.astype(np.int64)
    shift = perms[:, 0]
    p, n = prime_power(q)
    v = np.arange(q)
    digits = np.stack([(v // p**i) % p for i in range(n)], axis=1)
    plus = ((digits[:, None, :] + digits[None, :, :]) % p) @ (p ** np.arange(n))  # plus[c, v] = v + c
    trans = np.all(perms == plus[shift], axis=1)
    G.translations = ElementSet(trans, subgroup=True)
    G.stabilizer = ElementSet(shift == 0, subgroup=True)
    G.affine_degree = q
    return G


def affine_semidirect(q: int, gens: list[SemilinearMap], name: str | None = None) -> PermGroup:
    """``V x| G0`` on the ``q`` field elements, with ``G0 = <gens>`` linear semilinear maps."""
    pp = prime_power(q)
    if pp is None:
        raise NotPrimePower(f"{q} is not a prime power")
    p, n = pp
    for g in gens:
        if g.q != q or not g.linear:
            raise ParameterError("G0 generators must be zero-shift maps over F_q")
    F = finite_field(q)
    perms = [F.add[:, 1 * p**i] for i in range(n)] + [g.as_array() for g in gens]
    G = build_from_permutations(q, perms, name=name)
    return _mark_affine(G, q)


def semilinear_family(q: int, variant: str) -> PermGroup:
    """``GammaL1`` on the nonzero field elements, or ``AGL1``/``AGammaL1`` on all of them."""
    pp = prime_power(q)
    if pp is None:
        raise NotPrimePower(f"{q} is not a prime power")
    F = finite_field(q)
    w = F.primitive_element
    if variant == "GammaL1":
        gens = []
        if q > 2:
            gens.append(F.mul[w, 1:] - 1)
        if F.n > 1:
            gens.append(F.frobenius[1:] - 1)
        return build_from_permutations(q - 1, gens, name=f"GammaL(1,{q})")
    if variant == "AGL1":
        return affine_semidirect(q, [SemilinearMap(q, w)], name=f"AGL(1,{q})")
    if variant == "AGammaL1":
        return affine_semidirect(q, [SemilinearMap(q, w), SemilinearMap(q, 1, 1)], name=f"AGammaL(1,{q})")
    raise ParameterError(f"unknown semilinear variant {variant!r}")


@lru_cache(maxsize=None)
def gl2(p: int) -> PermGroup:
    """``GL(2,p)`` acting on the ``p*p - 1`` nonzero vectors (point ``v - 1`` is vector ``v``)."""
    if prime_power(p) != (p, 1):
        raise ParameterError("gl2 needs a prime")
    w = finite_field(p).primitive_element
    mats = [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((w, 0), (0, 1))]
    gens = [matrix_perm(p, M, nonzero=True) for M in mats]
    G = build_from_permutations(p * p - 1, gens, name=f"GL(2,{p})")
    return G


def lines_of(p: int) -> list[np.ndarray]:
    """The ``p + 1`` one-dimensional subspaces, as point sets in the nonzero-vector action."""
    seen: set[int] = set()
    out = []
    for v in range(1, p * p):
        if v in seen:
            continue
        x, y = v % p, v // p
        line = sorted({_vec_index(p, t * x, t * y) for t in range(1, p)})
        seen.update(line)
        out.append(np.asarray(line, dtype=np.int64) - 1)
    return out


def affine_from_linear(p: int, lin: PermGroup, gens) -> PermGroup:
    """``F_p^2 x| H`` for ``H = <gens>`` inside a nonzero-vector action ``lin``."""
    perms = translation_perms(p, 2)
    for g in gens:
        full = np.concatenate([[0], lin.perm(int(g)) + 1])
        perms.append(full)
    G = build_from_permutations(p * p, perms)
    return _mark_affine(G, p * p)


# ---------------------------------------------------------------------------
# crown-based powers


def crown_power(L: Group, k: int) -> ProductGroup | Group:
    """Tuples of ``L^k`` congruent modulo the unique minimal normal subgroup ``V`` of ``L``."""
    if k < 1:
        raise ParameterError("crown power needs k >= 1")
    mn = minimal_normal_subgroups(L)
    if not mn.monolithic:
        raise NotMonolithic(f"{L.name or 'group'} has {len(mn.subgroups)} minimal normal subgroups")
    if k == 1:
        return L
    V = mn.subgroups[0]
    order = V.size ** (k - 1) * L.order
    if order > COMPOSITE_CAP or order > 10**7:
        raise OrderCapExceeded(f"crown power of order {order} exceeds cap")
    n = L.order
    weights = [n ** (k - 1 - i) for i in range(k)]
    vs = V.indices().astype(np.int64)
    els = L.elements
    # tuples (l, l*v_2, ..., l*v_k)
    idx = els.copy() * weights[0]
    idx = idx[:, None]
    for i in range(1, k):
        col = L.mul_vec(els[:, None], vs[None, :]) * weights[i]  # |L| x |V|
        idx = (idx[:, :, None] + col[:, None, :]).reshape(n, -1)
    subset = np.sort(idx.ravel())
    from .core import subgroup_generators  # local: avoids a cycle at import

    gens_parent = []
    for g in L.generators:
        gens_parent.append(sum(int(g) * w for w in weights))
    for v in subgroup_generators(L, V):
        for i in range(k):
            gens_parent.append(int(v) * weights[i])
    pos = np.searchsorted(subset, np.asarray(gens_parent, dtype=np.int64))
    gens = [int(x) for x in dict.fromkeys(pos.tolist()) if x]
    nm = f"Crown({L.name},{k})" if L.name else None
    return ProductGroup([L] * k, subset=subset, generators=gens, name=nm)


# ---------------------------------------------------------------------------
# atom lookup

_ATOM_RE = re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*(?::[A-Za-z0-9]+)?)\s*(?:\(([^()]*)\))?\s*$")


def named_group(atom: str) -> Group:
    """Build a group from an atom such as ``C(12)``, ``E(2,3)``, ``M9`` or ``AGL(1,5)``."""
    m = _ATOM_RE.match(atom)
    if not m:
        raise UnknownAtom(f"unknown atom {atom!r}")
    head, argtext = m.group(1), m.group(2)
    args: list[int] = []
    if argtext is not None and argtext.strip():
        try:
            args = [int(a) for a in argtext.split(",")]
        except ValueError as exc:
            raise ParameterError(f"non-integer argument in {atom!r}") from exc
    return build_atom(head, args)


def _need(head: str, args: list[int], k: int) -> None:
    if len(args) != k:
        raise ParameterError(f"{head} takes {k} argument(s), got {len(args)}")


ATOM_ARITY = {
    "C": 1, "E": 2, "S": 1, "A": 1, "D": 1,
    "Q8": 0, "QD16": 0, "M9": 0, "C7:C3": 0,
    "AGL": 2, "AGammaL": 2, "GammaL": 2,
}


def build_atom(head: str, args: list[int]) -> Group:
    if head not in ATOM_ARITY:
        raise UnknownAtom(f"unknown atom {head!r}")
    _need(head, args, ATOM_ARITY[head])
    if head == "C":
        return cyclic(args[0])
    if head == "E":
        return elementary_abelian(*args)
    if head == "S":
        return symmetric(args[0])
    if head == "A":
        return alternating(args[0])
    if head == "D":
        return dihedral(args[0])
    if head == "Q8":
        return quaternion8()
    if head == "QD16":
        return semidihedral16()
    if head == "M9":
        return m9()
    if head == "C7:C3":
        return c7c3()
    if args[0] != 1:
        raise ParameterError(f"{head}(n,q) is supported for n = 1 only")
    variant = {"AGL": "AGL1", "AGammaL": "AGammaL1", "GammaL": "GammaL1"}[head]
    return semilinear_family(args[1], variant)
