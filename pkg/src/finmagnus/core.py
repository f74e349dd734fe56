"""Finite groups as index sets with a multiplication oracle.

Elements are integers ``0 .. order-1`` and ``0`` is always the identity. Three
backends share one interface:

* :class:`DenseGroup` -- an explicit Cayley table (``uint16``).
* :class:`PermGroup` -- the closure of permutation generators; products are
  looked up through the images of a base.
* :class:`ProductGroup` -- a direct product (or a subgroup of one, such as a
  crown-based power) multiplied componentwise with no table.

Everything above this module talks to groups only through ``mul_vec`` and the
kernels, so it never cares which backend it has.
"""

from __future__ import annotations

import threading
from collections.abc import Iterable, Sequence
from functools import cached_property
from math import prod
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import kernels
from .errors import (
    ClosureCapExceeded,
    InvalidHomomorphism,
    InvalidPermutation,
    InvalidTable,
    NoIdentity,
    NonAssociative,
    NotLatinSquare,
    OrderCapExceeded,
    ParameterError,
)

DENSE_CAP = 8192
FULL_VALIDATION_CAP = 512
ASSOCIATIVITY_SAMPLES = 1_000_000
CLOSURE_CAP = 50_000
COMPOSITE_CAP = 10**7
HOM_EXHAUSTIVE_CAP = 5000
TABLE_PREFERRED = 6000  # below this, column work reads the dense table

BACKENDS = ("dense-table", "permutation-closure", "direct-product-composite")


# ---------------------------------------------------------------------------
# element sets


class ElementSet:
    """A subset of a group's element indices, stored as a read-only bool mask."""

    __slots__ = ("mask", "subgroup", "_size", "_key")

    def __init__(self, mask: np.ndarray, subgroup: bool = False):
        m = np.array(mask, dtype=bool, copy=True)
        m.flags.writeable = False
        self.mask = m
        self.subgroup = bool(subgroup)
        self._size: int | None = None
        self._key: bytes | None = None

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int], subgroup: bool = False) -> ElementSet:
        m = np.zeros(n, dtype=bool)
        idx = np.fromiter((int(i) for i in indices), dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= n):
            raise ParameterError(f"element index out of range for a group of order {n}")
        m[idx] = True
        return cls(m, subgroup)

    @classmethod
    def full(cls, n: int) -> ElementSet:
        return cls(np.ones(n, dtype=bool), True)

    @classmethod
    def trivial(cls, n: int) -> ElementSet:
        m = np.zeros(n, dtype=bool)
        m[0] = True
        return cls(m, True)

    @property
    def size(self) -> int:
        if self._size is None:
            self._size = int(np.count_nonzero(self.mask))
        return self._size

    @property
    def n(self) -> int:
        return self.mask.shape[0]

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = np.packbits(self.mask, bitorder="little").tobytes()
        return self._key

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def least(self) -> int:
        return int(np.argmax(self.mask)) if self.size else -1

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self.indices().tolist())

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[int(x)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.n == other.n and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.n, self.key))

    def issubset(self, other: ElementSet) -> bool:
        return not np.any(self.mask & ~other.mask)

    def __le__(self, other: ElementSet) -> bool:
        return self.issubset(other)

    def __lt__(self, other: ElementSet) -> bool:
        return self.size < other.size and self.issubset(other)

    def __and__(self, other: ElementSet) -> ElementSet:
        return ElementSet(self.mask & other.mask, self.subgroup and other.subgroup)

    def sort_key(self) -> tuple[int, int]:
        return (self.size, self.least())

    def __repr__(self) -> str:
        kind = "Subgroup" if self.subgroup else "ElementSet"
        shown = self.indices()[:8].tolist()
        more = ", ..." if self.size > 8 else ""
        return f"<{kind} size={self.size} of {self.n}: {shown}{more}>"


# ---------------------------------------------------------------------------
# groups


class Group:
    """Common interface; subclasses supply ``mul_vec`` and ``inverse_of``."""

    backend: str = ""

    def __init__(self, order: int, name: str | None = None, labels: Sequence[str] | None = None):
        if order < 1:
            raise ParameterError("a group has at least one element")
        self.order = int(order)
        self.name = name
        self.labels = list(labels) if labels is not None else None
        self._cache: dict[Any, Any] = {}
        self._cache_lock = threading.Lock()

    identity = 0

    # -- arithmetic ---------------------------------------------------------

    def mul_vec(self, a, b) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_vec(np.asarray([a]), np.asarray([b]))[0])

    @property
    def inverse_of(self) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def inv(self, a: int) -> int:
        return int(self.inverse_of[a])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        result, base = 0, int(x)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conjugate(self, x: int, g: int) -> int:
        """``x^g = g^-1 x g``."""
        return self.mul(self.mul(self.inv(g), x), g)

    def commutator(self, x: int, y: int) -> int:
        """``[x, y] = x^-1 y^-1 x y``."""
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    # -- derived permutation arrays ------------------------------------------

    @cached_property
    def elements(self) -> np.ndarray:
        e = np.arange(self.order, dtype=np.int64)
        e.flags.writeable = False
        return e

    def _has_table(self) -> bool:
        return "table" in self.__dict__ or self.order <= TABLE_PREFERRED

    def rcol(self, s: int) -> np.ndarray:
        """``x * s`` for every ``x``, as an int32 permutation."""
        if self._has_table():
            return self.table[:, s].astype(np.int32)
        return self.mul_vec(self.elements, np.int64(s)).astype(np.int32)

    def lcol(self, s: int) -> np.ndarray:
        """``s * x`` for every ``x``."""
        if self._has_table():
            return self.table[s].astype(np.int32)
        return self.mul_vec(np.int64(s), self.elements).astype(np.int32)

    def rcols(self, elems: Iterable[int]) -> np.ndarray:
        rows = [self.rcol(int(s)) for s in elems]
        if not rows:
            return np.zeros((0, self.order), dtype=np.int32)
        return np.ascontiguousarray(np.stack(rows))

    def conj_perm(self, g: int) -> np.ndarray:
        """``x -> g^-1 x g`` for every ``x``."""
        if self._has_table():
            t = self.table
            return t[t[self.inv(g)], g].astype(np.int32)
        left = self.mul_vec(np.int64(self.inv(g)), self.elements)
        return self.mul_vec(left, np.int64(g)).astype(np.int32)

    @property
    def generators(self) -> tuple[int, ...]:  # pragma: no cover - abstract
        raise NotImplementedError

    @cached_property
    def conj_perms(self) -> np.ndarray:
        rows = [self.conj_perm(g) for g in self.generators]
        if not rows:
            return np.zeros((0, self.order), dtype=np.int32)
        return np.ascontiguousarray(np.stack(rows))

    @cached_property
    def table(self) -> np.ndarray:
        """Dense multiplication table, materialized on demand below DENSE_CAP."""
        n = self.order
        if n > DENSE_CAP:
            raise OrderCapExceeded(f"dense table requested for order {n} > {DENSE_CAP}")
        t = np.empty((n, n), dtype=np.uint16)
        step = max(1, 2_000_000 // n)
        for lo in range(0, n, step):
            rows = self.elements[lo : lo + step]
            t[lo : lo + step] = self.mul_vec(rows[:, None], self.elements[None, :])
        t.flags.writeable = False
        return t

    # -- misc ----------------------------------------------------------------

    def cached(self, key: Any, compute: Callable[[], Any]) -> Any:
        """Compute-once cache; concurrent first callers agree on the stored value."""
        try:
            return self._cache[key]
        except KeyError:
            pass
        value = compute()
        with self._cache_lock:
            return self._cache.setdefault(key, value)

    def label(self, x: int) -> str:
        if self.labels is not None:
            return str(self.labels[x])
        return str(int(x))

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"<{type(self).__name__}{nm} order={self.order} backend={self.backend}>"


class DenseGroup(Group):
    backend = "dense-table"

    def __init__(
        self,
        table: np.ndarray,
        name: str | None = None,
        labels: Sequence[str] | None = None,
        generators: Sequence[int] | None = None,
    ):
        t = np.ascontiguousarray(table, dtype=np.uint16)
        t.flags.writeable = False
        super().__init__(t.shape[0], name, labels)
        self.__dict__["table"] = t
        self._gens = tuple(int(g) for g in generators) if generators is not None else None

    def mul_vec(self, a, b) -> np.ndarray:
        return self.table[a, b].astype(np.int64)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def rcol(self, s: int) -> np.ndarray:
        return self.table[:, s].astype(np.int32)

    def lcol(self, s: int) -> np.ndarray:
        return self.table[s].astype(np.int32)

    @cached_property
    def inverse_of(self) -> np.ndarray:
        n = self.order
        inv = np.empty(n, dtype=np.int64)
        step = max(1, 2_000_000 // n)
        for lo in range(0, n, step):
            inv[lo : lo + step] = np.argmax(self.table[lo : lo + step] == 0, axis=1)
        inv.flags.writeable = False
        return inv

    @property
    def generators(self) -> tuple[int, ...]:
        if self._gens is None:
            self._gens = greedy_generators(self, ElementSet.full(self.order))
        return self._gens


class PermGroup(Group):
    """A group of permutations of ``range(degree)``; element ``i`` is ``perms[i]``.

    Products compose left to right: ``(a*b)(p) = b(a(p))``.
    """

    backend = "permutation-closure"

    def __init__(
        self,
        degree: int,
        perms: np.ndarray,
        generators: Sequence[int],
        name: str | None = None,
        labels: Sequence[str] | None = None,
    ):
        p = np.ascontiguousarray(perms, dtype=np.uint16 if degree <= 65535 else np.int32)
        p.flags.writeable = False
        super().__init__(p.shape[0], name, labels)
        self.degree = int(degree)
        self.perms = p
        self._gens = tuple(int(g) for g in generators)
        self.base = _choose_base(p)
        self._wide = len(self.base) * max(1, self.degree).bit_length() > 62
        base_imgs = p[:, self.base].astype(np.int64)
        if self._wide:
            self._lookup = {tuple(row): i for i, row in enumerate(base_imgs.tolist())}
        else:
            keys = self._encode(base_imgs)
            order = np.argsort(keys, kind="stable")
            self._sorted_keys = keys[order]
            self._sorted_pos = order.astype(np.int64)
            if np.any(np.diff(self._sorted_keys) == 0):
                raise InvalidPermutation("base does not separate the elements")

    @property
    def generators(self) -> tuple[int, ...]:
        return self._gens

    def _encode(self, imgs: np.ndarray) -> np.ndarray:
        d = np.int64(self.degree)
        key = np.zeros(imgs.shape[:-1], dtype=np.int64)
        for j in range(imgs.shape[-1] - 1, -1, -1):
            key = key * d + imgs[..., j]
        return key

    def index_of_images(self, imgs: np.ndarray) -> np.ndarray:
        """Element indices for rows of base images."""
        imgs = np.asarray(imgs, dtype=np.int64)
        if self._wide:
            flat = imgs.reshape(-1, imgs.shape[-1]).tolist()
            out = np.fromiter((self._lookup[tuple(r)] for r in flat), dtype=np.int64, count=len(flat))
            return out.reshape(imgs.shape[:-1])
        keys = self._encode(imgs)
        pos = np.searchsorted(self._sorted_keys, keys)
        return self._sorted_pos[pos]

    def index_of(self, perm: Sequence[int]) -> int:
        arr = np.asarray(perm, dtype=np.int64)
        i = int(self.index_of_images(arr[self.base]))
        if not np.array_equal(self.perms[i], arr):
            raise KeyError("permutation is not an element of this group")
        return i

    def mul_vec(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        pa = self.perms[a][..., self.base].astype(np.int64)
        imgs = self.perms[b[..., None], pa]
        return self.index_of_images(imgs)

    @cached_property
    def inverse_of(self) -> np.ndarray:
        inv_perms = np.argsort(self.perms, axis=1)
        inv = self.index_of_images(inv_perms[:, self.base])
        inv.flags.writeable = False
        return inv

    def perm(self, i: int) -> np.ndarray:
        return self.perms[i].astype(np.int64)


def _choose_base(perms: np.ndarray) -> list[int]:
    n, d = perms.shape
    if n == 1:
        return [0] if d else []
    base: list[int] = []
    codes = np.zeros(n, dtype=np.int64)
    distinct = 1
    for pt in range(d):
        trial = codes * d + perms[:, pt].astype(np.int64)
        _, inverse = np.unique(trial, return_inverse=True)
        cnt = int(inverse.max()) + 1
        if cnt > distinct:
            base.append(pt)
            codes = inverse.astype(np.int64)
            distinct = cnt
            if distinct == n:
                break
    if distinct != n:
        raise InvalidPermutation("duplicate permutations in element list")
    return base


class ProductGroup(Group):
    """Direct product ``factors[0] x ... x factors[-1]``, or a subgroup of it.

    Element index of a full product is the mixed-radix number whose most
    significant digit is the first factor. With ``subset`` given, elements are
    the sorted parent indices in ``subset`` and ``gens`` must be supplied.
    """

    backend = "direct-product-composite"

    def __init__(
        self,
        factors: Sequence[Group],
        subset: np.ndarray | None = None,
        generators: Sequence[int] | None = None,
        name: str | None = None,
    ):
        self.factors = tuple(factors)
        self.sizes = tuple(f.order for f in self.factors)
        self.parent_order = prod(self.sizes)
        if self.parent_order > COMPOSITE_CAP and subset is None:
            raise OrderCapExceeded(f"composite order {self.parent_order} > {COMPOSITE_CAP}")
        w = []
        acc = 1
        for s in reversed(self.sizes):
            w.append(acc)
            acc *= s
        self.weights = tuple(reversed(w))
        if subset is None:
            self.subset = None
            super().__init__(self.parent_order, name)
            gens = []
            for i, f in enumerate(self.factors):
                gens.extend(int(g) * self.weights[i] for g in f.generators)
            self._gens = tuple(gens)
        else:
            s = np.unique(np.asarray(subset, dtype=np.int64))
            if s.size == 0 or s[0] != 0:
                raise ParameterError("subset must contain the identity")
            if s.size > COMPOSITE_CAP:
                raise OrderCapExceeded(f"composite order {s.size} > {COMPOSITE_CAP}")
            s.flags.writeable = False
            self.subset = s
            super().__init__(s.size, name)
            if generators is None:
                raise ParameterError("a subgroup of a product needs explicit generators")
            self._gens = tuple(int(g) for g in generators)

    @property
    def generators(self) -> tuple[int, ...]:
        return self._gens

    def lift(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return x if self.subset is None else self.subset[x]

    def lower(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=np.int64)
        if self.subset is None:
            return p
        pos = np.searchsorted(self.subset, p)
        return pos

    def digits(self, x) -> list[np.ndarray]:
        p = self.lift(x)
        return [(p // w) % s for w, s in zip(self.weights, self.sizes)]

    def coords(self, x: int) -> tuple[int, ...]:
        return tuple(int(d) for d in self.digits(np.int64(x)))

    def index_of(self, coords: Sequence[int]) -> int:
        p = sum(int(c) * w for c, w in zip(coords, self.weights))
        i = int(self.lower(np.int64(p)))
        if self.subset is not None and (i >= self.order or self.subset[i] != p):
            raise KeyError("tuple is not an element of this subgroup")
        return i

    def mul_vec(self, a, b) -> np.ndarray:
        da, db = self.digits(a), self.digits(b)
        out = None
        for f, w, x, y in zip(self.factors, self.weights, da, db):
            term = f.mul_vec(x, y) * w
            out = term if out is None else out + term
        return self.lower(out)

    @cached_property
    def inverse_of(self) -> np.ndarray:
        ds = self.digits(self.elements)
        p = sum(f.inverse_of[d] * w for f, w, d in zip(self.factors, self.weights, ds))
        inv = self.lower(p)
        inv.flags.writeable = False
        return inv

    def projection(self, i: int) -> GroupHom:
        """Coordinate projection onto factor ``i``."""
        return GroupHom(self, self.factors[i], self.digits(self.elements)[i])


# ---------------------------------------------------------------------------
# homomorphisms


class GroupHom:
    """A map between groups given by its image array."""

    def __init__(self, domain: Group, codomain: Group, image: np.ndarray):
        img = np.array(image, dtype=np.int64, copy=True)
        img.flags.writeable = False
        if img.shape != (domain.order,):
            raise InvalidHomomorphism("image array must have one entry per domain element")
        self.domain, self.codomain, self.image = domain, codomain, img

    def __call__(self, x):
        return self.image[x]

    def validate(self) -> GroupHom:
        """Check the homomorphism law; raise ``InvalidHomomorphism`` on failure."""
        G, H, img = self.domain, self.codomain, self.image
        if img[0] != 0:
            raise InvalidHomomorphism("identity does not map to identity")
        if img.min() < 0 or img.max() >= H.order:
            raise InvalidHomomorphism("image index out of range")
        n = G.order
        if n <= HOM_EXHAUSTIVE_CAP:
            step = max(1, 1_000_000 // n)
            for lo in range(0, n, step):
                a = G.elements[lo : lo + step, None]
                b = G.elements[None, :]
                lhs = img[G.mul_vec(a, b)]
                rhs = H.mul_vec(img[a], img[b])
                bad = np.argwhere(lhs != rhs)
                if bad.size:
                    x, y = int(bad[0][0]) + lo, int(bad[0][1])
                    raise InvalidHomomorphism(f"f({x}*{y}) != f({x})*f({y})")
        else:
            for s in G.generators:
                lhs = img[G.rcol(s)]
                rhs = H.mul_vec(img, np.int64(img[s]))
                bad = np.flatnonzero(lhs != rhs)
                if bad.size:
                    raise InvalidHomomorphism(f"f({int(bad[0])}*{s}) != f({int(bad[0])})*f({s})")
        return self

    def kernel(self) -> ElementSet:
        return ElementSet(self.image == 0, subgroup=True)

    def is_injective(self) -> bool:
        return np.unique(self.image).size == self.domain.order

    def is_surjective(self) -> bool:
        return np.unique(self.image).size == self.codomain.order

    def image_set(self) -> ElementSet:
        m = np.zeros(self.codomain.order, dtype=bool)
        m[self.image] = True
        return ElementSet(m, subgroup=True)


# ---------------------------------------------------------------------------
# builders


def build_from_cayley(
    table,
    labels: Sequence[str] | None = None,
    name: str | None = None,
    full_validation_cap: int = FULL_VALIDATION_CAP,
    dense_cap: int = DENSE_CAP,
) -> DenseGroup:
    """Validate a Cayley table and wrap it as a dense-table group.

    If the identity is not at index 0 the table is relabelled by swapping the
    identity with element 0 (labels follow).
    """
    try:
        t = np.asarray(table)
    except Exception as exc:  # ragged input
        raise InvalidTable(f"not a rectangular table: {exc}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise InvalidTable(f"table must be a nonempty square matrix, got shape {t.shape}")
    if not np.issubdtype(t.dtype, np.integer):
        raise InvalidTable("table entries must be integers")
    n = t.shape[0]
    if n > dense_cap:
        raise OrderCapExceeded(f"dense table of order {n} exceeds the cap {dense_cap}")
    if t.min() < 0 or t.max() >= n:
        bad = np.argwhere((t < 0) | (t >= n))[0]
        raise InvalidTable(f"entry at ({bad[0]}, {bad[1]}) is out of range")
    t = t.astype(np.int64)
    if labels is not None and len(labels) != n:
        raise InvalidTable(f"{len(labels)} labels for {n} elements")

    ar = np.arange(n)
    srt = np.sort(t, axis=1)
    bad_rows = np.flatnonzero(np.any(srt != ar, axis=1))
    if bad_rows.size:
        r = int(bad_rows[0])
        vals, counts = np.unique(t[r], return_counts=True)
        raise NotLatinSquare("row", r, int(vals[counts > 1][0]))
    srt = np.sort(t, axis=0)
    bad_cols = np.flatnonzero(np.any(srt != ar[:, None], axis=0))
    if bad_cols.size:
        c = int(bad_cols[0])
        vals, counts = np.unique(t[:, c], return_counts=True)
        raise NotLatinSquare("column", c, int(vals[counts > 1][0]))

    ids = np.flatnonzero(np.all(t == ar, axis=1) & np.all(t == ar[:, None], axis=0))
    if ids.size == 0:
        raise NoIdentity("no element acts as a two-sided identity")
    e = int(ids[0])
    if e != 0:
        perm = ar.copy()
        perm[0], perm[e] = e, 0  # new index -> old index
        t = perm[t[np.ix_(perm, perm)]]  # perm is an involution
        if labels is not None:
            labels = [labels[int(i)] for i in perm]
    _check_associative(t, full_validation_cap)
    return DenseGroup(t, name=name, labels=labels)


def _check_associative(t: np.ndarray, full_cap: int) -> None:
    n = t.shape[0]
    if n <= full_cap:
        for a in range(n):
            lhs = t[t[a]]  # (a*b)*c indexed [b, c]
            rhs = t[a][t]  # a*(b*c)
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                raise NonAssociative(a, int(bad[0][0]), int(bad[0][1]))
        return
    # Light's test on a generating set, then a fixed-seed random sample.
    g = DenseGroup(t)
    for s in g.generators:
        lhs = t[t[:, s]]  # (x*s)*y indexed [x, y]
        rhs = t[:, t[s]]  # x*(s*y)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            raise NonAssociative(int(bad[0][0]), s, int(bad[0][1]))
    rng = np.random.default_rng(0)
    remaining = ASSOCIATIVITY_SAMPLES
    while remaining:
        m = min(remaining, 200_000)
        a, b, c = rng.integers(0, n, size=(3, m))
        bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
        if bad.size:
            i = int(bad[0])
            raise NonAssociative(int(a[i]), int(b[i]), int(c[i]))
        remaining -= m


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> np.ndarray:
    """Array form of a product of disjoint-or-not cycles, applied left to right."""
    p = np.arange(degree, dtype=np.int64)
    for cyc in cycles:
        cyc = [int(c) for c in cyc]
        if any(c < 0 or c >= degree for c in cyc):
            raise InvalidPermutation(f"cycle {tuple(cyc)} leaves range({degree})")
        if len(set(cyc)) != len(cyc):
            raise InvalidPermutation(f"cycle {tuple(cyc)} repeats a point")
        step = np.arange(degree, dtype=np.int64)
        for i, c in enumerate(cyc):
            step[c] = cyc[(i + 1) % len(cyc)]
        p = step[p]
    return p


def build_from_permutations(
    degree: int,
    gens: Sequence[Sequence[int]],
    cap: int = CLOSURE_CAP,
    name: str | None = None,
) -> PermGroup:
    """Breadth-first closure of permutation generators; element 0 is the identity."""
    degree = int(degree)
    if degree < 0:
        raise ParameterError("degree must be nonnegative")
    dtype = np.uint16 if degree <= 65535 else np.int32
    garr = []
    for g in gens:
        a = np.asarray(g, dtype=np.int64)
        if a.shape != (degree,) or not np.array_equal(np.sort(a), np.arange(degree)):
            raise InvalidPermutation(f"generator {list(a)[:12]} is not a permutation of range({degree})")
        garr.append(a.astype(dtype))
    ident = np.arange(degree, dtype=dtype)
    elems = [ident]
    index = {ident.tobytes(): 0}
    head = 0
    while head < len(elems):
        batch = np.stack(elems[head:])
        head = len(elems)
        if not garr:
            break
        prods = np.stack([g[batch] for g in garr], axis=1).reshape(-1, degree)
        for row in prods:
            k = row.tobytes()
            if k not in index:
                if len(elems) >= cap:
                    raise ClosureCapExceeded(f"closure exceeds {cap} elements")
                index[k] = len(elems)
                elems.append(row)
    perms = np.stack(elems) if elems else ident[None, :]
    gen_idx = []
    for g in garr:
        i = index[g.tobytes()]
        if i and i not in gen_idx:
            gen_idx.append(i)
    return PermGroup(degree, perms, gen_idx, name=name)


def build_direct_product(factors: Sequence[Group], cap: int = COMPOSITE_CAP, name: str | None = None) -> Group:
    if not factors:
        raise ParameterError("direct product needs at least one factor")
    if len(factors) == 1:
        return factors[0]
    total = prod(f.order for f in factors)
    if total > cap:
        raise OrderCapExceeded(f"direct product order {total} exceeds cap {cap}")
    return ProductGroup(factors, name=name)


def as_dense(G: Group, name: str | None = None) -> DenseGroup:
    """The same group re-expressed with a materialized Cayley table."""
    if isinstance(G, DenseGroup):
        return G
    return DenseGroup(G.table, name=name or G.name, labels=G.labels, generators=G.generators)


def subgroup_as_group(G: Group, H: ElementSet, name: str | None = None) -> tuple[DenseGroup, GroupHom]:
    """``H`` as a group in its own right, with the inclusion into ``G``.

    Elements are renumbered in increasing order, so the identity stays 0.
    """
    idx = H.indices().astype(np.int64)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[idx] = np.arange(idx.size)
    sub = pos[G.mul_vec(idx[:, None], idx[None, :])]
    if np.any(sub < 0):
        raise ParameterError("element set is not closed under multiplication")
    D = DenseGroup(sub, name=name)
    return D, GroupHom(D, G, idx)


# ---------------------------------------------------------------------------
# element-level algorithms


def _as_indices(S) -> np.ndarray:
    if isinstance(S, ElementSet):
        return S.indices()
    return np.asarray(sorted({int(s) for s in S}), dtype=np.int64)


def subgroup_closure(G: Group, elems: Iterable[int], start: np.ndarray | None = None) -> tuple[np.ndarray, list[int]]:
    """Mask of the subgroup generated by ``elems`` (plus ``start``), with the generators used."""
    cur = np.zeros(G.order, dtype=bool)
    cur[0] = True
    if start is not None:
        cur |= start
    used: list[int] = []
    for x in elems:
        x = int(x)
        if cur[x]:
            continue
        used.append(x)
        cur = kernels.reach(G.rcols(used), cur.view(np.uint8))
    return cur, used


def closure(G: Group, S) -> ElementSet:
    """Smallest subgroup containing ``S``."""
    mask, _ = subgroup_closure(G, _as_indices(S))
    return ElementSet(mask, subgroup=True)


def greedy_generators(G: Group, H: ElementSet) -> tuple[int, ...]:
    """Least-index greedy generating set of the subgroup ``H``."""
    _, used = subgroup_closure(G, H.indices())
    return tuple(used)


def subgroup_generators(G: Group, H: ElementSet) -> tuple[int, ...]:
    key = ("gens", H.key)
    return G.cached(key, lambda: greedy_generators(G, H))


def element_order(G: Group, x: int) -> int:
    x = int(x)
    k, cur = 1, x
    while cur != 0:
        cur = G.mul(cur, x)
        k += 1
        if k > G.order:
            raise ParameterError("element order exceeds group order; corrupt multiplication")
    return k


def element_orders(G: Group) -> np.ndarray:
    def compute() -> np.ndarray:
        n = G.order
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        idx = np.arange(1, n, dtype=np.int64)
        cur = idx.copy()
        k = 1
        while idx.size:
            cur = G.mul_vec(cur, idx)
            k += 1
            done = cur == 0
            orders[idx[done]] = k
            idx, cur = idx[~done], cur[~done]
        orders.flags.writeable = False
        return orders

    return G.cached("element_orders", compute)


def order_histogram(G: Group) -> tuple[tuple[int, int], ...]:
    vals, counts = np.unique(element_orders(G), return_counts=True)
    return tuple(zip(vals.tolist(), counts.tolist()))


def centralizer(G: Group, S) -> ElementSet:
    """``{g : gs = sg for all s in S}``."""
    idx = _as_indices(S)
    if idx.size > 8:
        idx = np.asarray(greedy_generators(G, closure(G, idx)), dtype=np.int64)
    mask = np.ones(G.order, dtype=bool)
    for s in idx:
        mask &= G.rcol(int(s)) == G.lcol(int(s))
    return ElementSet(mask, subgroup=True)


def center(G: Group) -> ElementSet:
    return G.cached("center", lambda: centralizer(G, G.generators))


class ClassData:
    """Conjugacy-class partition of a group.

    Classes are numbered by their least element, so class 0 is ``{identity}``.
    """

    def __init__(self, G: Group):
        n = G.order
        labels = kernels.orbit_labels(G.conj_perms, n)
        reps = np.unique(labels).astype(np.int64)
        class_of = np.searchsorted(reps, labels).astype(np.int64)
        sizes = np.bincount(class_of, minlength=reps.size).astype(np.int64)
        inverse_class = class_of[G.inverse_of[reps]]
        for arr in (reps, class_of, sizes, inverse_class):
            arr.flags.writeable = False
        self.group = G
        self.reps = reps
        self.class_of = class_of
        self.sizes = sizes
        self.inverse_class = inverse_class
        self.centralizer_order = n // sizes

    @property
    def count(self) -> int:
        return int(self.reps.size)

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.class_of == c)

    def class_mask(self, c: int) -> np.ndarray:
        return self.class_of == c

    def real_classes(self) -> np.ndarray:
        return np.flatnonzero(self.inverse_class == np.arange(self.count))

    def __repr__(self) -> str:
        return f"<ClassData k={self.count} sizes={self.sizes.tolist()}>"


def conjugacy_classes(G: Group) -> ClassData:
    return G.cached("classes", lambda: ClassData(G))


# ---------------------------------------------------------------------------
# Cayley-table text format


def parse_cayley_text(text: str) -> tuple[np.ndarray, list[str] | None]:
    """Parse ``n`` / ``n`` rows / optional ``#name i label`` lines."""
    lines = [ln.strip() for ln in text.splitlines()]
    body = [ln for ln in lines if ln and not ln.startswith("#")]
    if not body:
        raise InvalidTable("empty Cayley file")
    try:
        n = int(body[0])
    except ValueError:
        raise InvalidTable(f"first line must be the order, got {body[0]!r}") from None
    if len(body) < n + 1:
        raise InvalidTable(f"expected {n} table rows, found {len(body) - 1}")
    rows = []
    for r, ln in enumerate(body[1 : n + 1]):
        parts = ln.split()
        if len(parts) != n:
            raise InvalidTable(f"row {r} has {len(parts)} entries, expected {n}")
        try:
            rows.append([int(p) for p in parts])
        except ValueError:
            raise InvalidTable(f"row {r} has a non-integer entry") from None
    if len(body) > n + 1:
        raise InvalidTable("unexpected lines after the table")
    labels: list[str] | None = None
    for ln in lines:
        if ln.startswith("#name"):
            parts = ln.split(maxsplit=2)
            if len(parts) != 3:
                raise InvalidTable(f"bad label line {ln!r}")
            if labels is None:
                labels = [str(i) for i in range(n)]
            i = int(parts[1])
            if not 0 <= i < n:
                raise InvalidTable(f"label index {i} out of range")
            labels[i] = parts[2]
    return np.asarray(rows, dtype=np.int64), labels


def load_cayley(path: str | Path, name: str | None = None) -> DenseGroup:
    table, labels = parse_cayley_text(Path(path).read_text())
    return build_from_cayley(table, labels=labels, name=name or Path(path).stem)


def dump_cayley(G: Group) -> str:
    t = G.table
    out = [str(G.order)]
    out.extend(" ".join(str(int(v)) for v in row) for row in t)
    if G.labels is not None:
        out.extend(f"#name {i} {lab}" for i, lab in enumerate(G.labels))
    return "\n".join(out) + "\n"


def validate_group(G: Group, full_cap: int = FULL_VALIDATION_CAP, samples: int = 20_000) -> None:
    """Group-axiom check through ``mul_vec`` (any backend)."""
    n = G.order
    e = G.elements
    if not np.array_equal(G.mul_vec(e, np.int64(0)), e) or not np.array_equal(G.mul_vec(np.int64(0), e), e):
        raise NoIdentity("element 0 is not a two-sided identity")
    inv = G.inverse_of
    if np.any(G.mul_vec(e, inv) != 0) or np.any(G.mul_vec(inv, e) != 0):
        bad = int(np.flatnonzero(G.mul_vec(e, inv) != 0)[0]) if np.any(G.mul_vec(e, inv) != 0) else 0
        raise InvalidTable(f"inverse law fails at {bad}")
    if not np.array_equal(inv[inv], e):
        raise InvalidTable("inverse map is not an involution")
    if n <= full_cap:
        _check_associative(G.table.astype(np.int64), full_cap)
        return
    rng = np.random.default_rng(0)
    a, b, c = rng.integers(0, n, size=(3, samples))
    bad = np.flatnonzero(G.mul_vec(G.mul_vec(a, b), c) != G.mul_vec(a, G.mul_vec(b, c)))
    if bad.size:
        i = int(bad[0])
        raise NonAssociative(int(a[i]), int(b[i]), int(c[i]))
    for s in G.generators:
        x = rng.integers(0, n, size=samples)
        y = rng.integers(0, n, size=samples)
        bad = np.flatnonzero(G.mul_vec(G.mul_vec(x, s), y) != G.mul_vec(x, G.mul_vec(s, y)))
        if bad.size:
            i = int(bad[0])
            raise NonAssociative(int(x[i]), int(s), int(y[i]))
