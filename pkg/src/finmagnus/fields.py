"""Finite fields as lookup tables, and semilinear maps of the field to itself.

Element ``v`` of ``F_q`` (``q = p**n``) is the polynomial ``sum c_i x**i`` with
``v = sum c_i p**i``; 0 is zero and 1 is one. The modulus is the
lexicographically least monic irreducible of degree ``n`` (coefficients read
from the top degree down).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotPrimePower, ParameterError
from .structure import prime_power

FIELD_CAP = 1024


def _has_root_factor(poly: list[int], p: int) -> bool:
    """True when ``poly`` (low degree first, monic, degree n) has a factor of degree <= n/2."""
    n = len(poly) - 1
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            f = list(reversed(tail)) + [1]
            if _divides(f, poly, p):
                return True
    return False


def _divides(f: list[int], g: list[int], p: int) -> bool:
    r = list(g)
    df = len(f) - 1
    for d in range(len(r) - 1, df - 1, -1):
        c = r[d]
        if c:
            for k in range(df + 1):
                r[d - df + k] = (r[d - df + k] - c * f[k]) % p
    return not any(r[:df])


@lru_cache(maxsize=None)
def least_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the least monic irreducible of degree ``n``."""
    if n == 1:
        return (0, 1)
    # lexicographic from the top: iterate coefficient tuples (c_{n-1}, ..., c_0)
    for top in itertools.product(range(p), repeat=n):
        poly = list(reversed(top)) + [1]
        if poly[0] == 0:
            continue
        if not _has_root_factor(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldTable:
    q: int
    p: int
    n: int
    modulus: tuple[int, ...]
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] = 0 by convention
    primitive_element: int
    frobenius: np.ndarray
    log: np.ndarray  # discrete log base the primitive element; log[0] = -1
    exp: np.ndarray  # exp[k] = primitive**k, k in [0, q-1)

    def digits(self, v: int) -> list[int]:
        return [(v // self.p**i) % self.p for i in range(self.n)]

    def from_digits(self, c) -> int:
        return sum(int(x) % self.p * self.p**i for i, x in enumerate(c))

    def pow(self, v: int, k: int) -> int:
        if v == 0:
            return 0 if k else 1
        return int(self.exp[(int(self.log[v]) * k) % (self.q - 1)])

    def frob_power(self, i: int) -> np.ndarray:
        """The map ``v -> v**(p**i)``."""
        i %= self.n
        f = np.arange(self.q, dtype=np.int64)
        for _ in range(i):
            f = self.frobenius[f]
        return f

    def poly_string(self) -> str:
        terms = []
        for d in range(self.n, -1, -1):
            c = self.modulus[d]
            if not c:
                continue
            mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
            coef = "" if (c == 1 and d) else str(c)
            terms.append(coef + mono)
        return " + ".join(terms)


@lru_cache(maxsize=None)
def finite_field(q: int) -> FieldTable:
    """Lookup tables for ``F_q``."""
    q = int(q)
    pp = prime_power(q)
    if pp is None:
        raise NotPrimePower(f"{q} is not a prime power")
    if q > FIELD_CAP:
        raise ParameterError(f"field size {q} exceeds {FIELD_CAP}")
    p, n = pp
    mod = list(least_irreducible(p, n))
    idx = np.arange(q)
    dig = np.stack([(idx // p**i) % p for i in range(n)], axis=1)  # q x n
    weights = p ** np.arange(n)
    add = ((dig[:, None, :] + dig[None, :, :]) % p) @ weights
    neg = ((-dig) % p) @ weights

    # multiplication by x as a linear map, then v*w = sum_i w_i (x^i v)
    xpow = [idx.copy()]
    shift = np.array([_times_x(dig[v].tolist(), mod, p, weights) for v in range(q)], dtype=np.int64)
    for _ in range(1, n):
        xpow.append(shift[xpow[-1]])
    mul = np.zeros((q, q), dtype=np.int64)
    for w in range(q):
        acc = np.zeros(q, dtype=np.int64)
        for i, c in enumerate(dig[w].tolist()):
            for _ in range(c):
                acc = add[acc, xpow[i]]
        mul[:, w] = acc

    prim = -1
    for g in range(1, q):
        cur, k = g, 1
        while cur != 1:
            cur = int(mul[cur, g])
            k += 1
        if k == q - 1:
            prim = g
            break
    exp = np.zeros(q - 1, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    cur = 1
    for k in range(q - 1):
        exp[k] = cur
        log[cur] = k
        cur = int(mul[cur, prim])
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = exp[(-log[1:]) % (q - 1)]
    frob = np.array([_pow_tab(mul, v, p) for v in range(q)], dtype=np.int64)
    for arr in (add, mul, neg, inv, frob, log, exp):
        arr.flags.writeable = False
    return FieldTable(q, p, n, tuple(mod), add, mul, neg, inv, prim, frob, log, exp)


def _pow_tab(mul: np.ndarray, v: int, k: int) -> int:
    r = 1
    for _ in range(k):
        r = int(mul[r, v])
    return r


def _times_x(c: list[int], mod: list[int], p: int, weights: np.ndarray) -> int:
    top = c[-1]
    out = [0] + c[:-1]
    if top:
        out = [(out[k] - top * mod[k]) % p for k in range(len(c))]
    return int(np.dot(out, weights))


@dataclass(frozen=True)
class SemilinearMap:
    """``v -> a * v**(p**i) + c`` on ``F_q``."""

    q: int
    a: int
    i: int = 0
    c: int = 0

    def __post_init__(self):
        F = finite_field(self.q)
        if not 0 < self.a < self.q:
            raise ParameterError("scale must be a nonzero field element")
        if not 0 <= self.c < self.q:
            raise ParameterError("shift must be a field element")
        object.__setattr__(self, "i", self.i % F.n)

    @property
    def field(self) -> FieldTable:
        return finite_field(self.q)

    def as_array(self) -> np.ndarray:
        F = self.field
        return F.add[F.mul[self.a, F.frob_power(self.i)], self.c]

    def __call__(self, v: int) -> int:
        return int(self.as_array()[v])

    def then(self, other: SemilinearMap) -> SemilinearMap:
        """Apply ``self`` first, then ``other``."""
        if other.q != self.q:
            raise ParameterError("maps over different fields")
        F = self.field
        fj = F.frob_power(other.i)
        a = int(F.mul[other.a, fj[self.a]])
        c = int(F.add[F.mul[other.a, fj[self.c]], other.c])
        return SemilinearMap(self.q, a, self.i + other.i, c)

    @property
    def linear(self) -> bool:
        return self.c == 0
