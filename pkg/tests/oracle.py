"""Brute-force reference implementations over plain Cayley tables.

Nothing here calls into the library's algorithms: the only input is the
multiplication table as a list of lists, and every answer is computed by
direct enumeration. Intended for groups of a few hundred elements at most.
"""

from __future__ import annotations


class Table:
    def __init__(self, rows):
        self.t = [list(map(int, r)) for r in rows]
        self.n = len(self.t)
        self.e = next(i for i in range(self.n) if all(self.t[i][j] == j for j in range(self.n)))
        self.inv = [next(j for j in range(self.n) if self.t[i][j] == self.e) for i in range(self.n)]

    @classmethod
    def of(cls, G) -> Table:
        return cls(G.table.tolist())

    def mul(self, a: int, b: int) -> int:
        return self.t[a][b]

    def conj(self, x: int, g: int) -> int:
        return self.t[self.t[self.inv[g]][x]][g]

    def order_of(self, x: int) -> int:
        k, y = 1, x
        while y != self.e:
            y = self.t[y][x]
            k += 1
        return k


def closure(T: Table, elems) -> frozenset[int]:
    S = {T.e} | set(elems)
    frontier = list(S)
    while frontier:
        new = []
        for a in frontier:
            for b in list(S):
                for c in (T.mul(a, b), T.mul(b, a)):
                    if c not in S:
                        S.add(c)
                        new.append(c)
        frontier = new
    return frozenset(S)


def conjugacy_classes(T: Table) -> list[frozenset[int]]:
    seen, out = set(), []
    for x in range(T.n):
        if x in seen:
            continue
        c = frozenset(T.conj(x, g) for g in range(T.n))
        seen |= c
        out.append(c)
    return out


def normal_closure(T: Table, x: int) -> frozenset[int]:
    return closure(T, {T.conj(x, g) for g in range(T.n)})


def is_conjugate(T: Table, x: int, y: int) -> bool:
    return any(T.conj(x, g) == y for g in range(T.n))


def magnus_pairwise(T: Table) -> tuple[bool, bool]:
    """MP and SMP straight from the definition, pair by pair."""
    nc = [normal_closure(T, x) for x in range(T.n)]
    mp = smp = True
    for x in range(T.n):
        for y in range(x + 1, T.n):
            if nc[x] != nc[y]:
                continue
            conj = is_conjugate(T, x, y)
            if not conj:
                smp = False
                if not is_conjugate(T, x, T.inv[y]):
                    mp = False
    return mp, smp and mp


def all_subgroups(T: Table) -> set[frozenset[int]]:
    """Every subgroup, by closing cyclic subgroups under pairwise joins."""
    subs = {closure(T, [x]) for x in range(T.n)}
    frontier = set(subs)
    while frontier:
        new = set()
        for A in frontier:
            for B in list(subs):
                if A <= B or B <= A:
                    continue
                J = closure(T, A | B)
                if J not in subs:
                    new.add(J)
        subs |= new
        frontier = new
    return subs


def is_normal(T: Table, H) -> bool:
    return all(T.conj(h, g) in H for h in H for g in range(T.n))


def normal_subgroups(T: Table) -> set[frozenset[int]]:
    return {H for H in all_subgroups(T) if is_normal(T, H)}


def maximal_subgroups(T: Table) -> list[frozenset[int]]:
    subs = [H for H in all_subgroups(T) if len(H) < T.n]
    return [H for H in subs if not any(H < K for K in subs)]


def frattini_order(T: Table) -> int:
    maxes = maximal_subgroups(T)
    if not maxes:
        return T.n
    inter = frozenset(range(T.n))
    for M in maxes:
        inter &= M
    return len(inter)


def _p_exp(m: int, p: int) -> int | None:
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k if m == 1 else None


def s_p(T: Table, p: int) -> int:
    best = 0
    for M in maximal_subgroups(T):
        k = _p_exp(T.n // len(M), p)
        if k:
            best = max(best, k)
    return best


def j_p(T: Table, p: int) -> int:
    """Largest p-power index of a maximal subgroup in any chain from the top."""
    subs = all_subgroups(T)
    best = 0
    for H in subs:
        for K in subs:
            if H < K and not any(H < L < K for L in subs):
                k = _p_exp(len(K) // len(H), p)
                if k:
                    best = max(best, k)
    return best


def chief_factor_orders(T: Table) -> list[int]:
    """Orders of the factors of one chief series (Jordan-Holder makes the multiset unique)."""
    normals = sorted(normal_subgroups(T), key=len)
    cur = frozenset([T.e])
    out = []
    while len(cur) < T.n:
        nxt = min((N for N in normals if cur < N), key=len)
        out.append(len(nxt) // len(cur))
        cur = nxt
    return out


def is_solvable(T: Table) -> bool:
    cur = frozenset(range(T.n))
    while len(cur) > 1:
        comms = {T.mul(T.mul(T.inv[a], T.inv[b]), T.mul(a, b)) for a in cur for b in cur}
        nxt = closure(T, comms)
        if nxt == cur:
            return False
        cur = nxt
    return True


def center_order(T: Table) -> int:
    return sum(all(T.mul(z, g) == T.mul(g, z) for g in range(T.n)) for z in range(T.n))


def element_order_counts(T: Table) -> dict[int, int]:
    out: dict[int, int] = {}
    for x in range(T.n):
        k = T.order_of(x)
        out[k] = out.get(k, 0) + 1
    return out


def is_isomorphic(A: Table, B: Table) -> bool:
    """Backtracking over images of a generating set; only for small groups."""
    if A.n != B.n or element_order_counts(A) != element_order_counts(B):
        return False
    gens: list[int] = []
    H = frozenset([A.e])
    for x in sorted(range(A.n), key=A.order_of, reverse=True):
        if x not in H:
            gens.append(x)
            H = closure(A, gens)
        if len(H) == A.n:
            break

    def extend(images):
        phi = {A.e: B.e}
        for g, im in zip(gens, images):
            phi[g] = im
        frontier = list(phi)
        while frontier:
            new = []
            for a in frontier:
                for g in gens:
                    c = A.mul(a, g)
                    d = B.mul(phi[a], phi[g])
                    if c in phi:
                        if phi[c] != d:
                            return None
                    else:
                        phi[c] = d
                        new.append(c)
            frontier = new
        if len(set(phi.values())) != A.n:
            return None
        for a in range(A.n):
            for b in range(A.n):
                if phi[A.mul(a, b)] != B.mul(phi[a], phi[b]):
                    return None
        return phi

    def search(i, images):
        if i == len(gens):
            return extend(images) is not None
        k = A.order_of(gens[i])
        for y in range(B.n):
            if B.order_of(y) == k and search(i + 1, images + [y]):
                return True
        return False

    return search(0, [])
