"""Pure-Python/numpy versions of the compiled kernels in ``_kernels.pyx``.

Selected automatically when the extension is not built, or forced with
``MAGNUS_PURE_PYTHON=1``. Results are identical; only speed differs.
"""

from __future__ import annotations

import numpy as np


def reach(perms: np.ndarray, seeds: np.ndarray) -> np.ndarray:
    out = np.asarray(seeds, dtype=bool).copy()
    frontier = np.flatnonzero(out)
    while frontier.size:
        nxt = perms[:, frontier].ravel()
        nxt = np.unique(nxt[~out[nxt]])
        out[nxt] = True
        frontier = nxt
    return out


def orbit_labels(perms: np.ndarray, n: int) -> np.ndarray:
    labels = np.full(n, -1, dtype=np.int32)
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = s
        stack = [s]
        while stack:
            x = stack.pop()
            for row in perms:
                y = int(row[x])
                if labels[y] < 0:
                    labels[y] = s
                    stack.append(y)
    return labels


def _pack(mask: np.ndarray) -> bytes:
    return np.packbits(mask.astype(np.uint8), bitorder="little").tobytes()


def subgroup_lattice(table: np.ndarray, table_t: np.ndarray, cyclic_reps: np.ndarray, conj: np.ndarray, cyc_index: np.ndarray, max_count: int):
    n = table.shape[0]
    tab = table.tolist()
    conj_l = conj.tolist()
    cidx = cyc_index.tolist()
    work = [False] * n
    keys = [np.zeros(1, dtype=np.int32).tobytes()]
    index = {keys[0]: 0}
    elements: list[np.ndarray] = [np.zeros(1, dtype=np.int32)]
    gens: list[tuple[int, ...]] = [()]
    ext: list[dict[int, int]] = [{}]
    cyc = [int(c) for c in cyclic_reps]

    i = 0
    while i < len(elements):
        hel = elements[i].tolist()
        hset = set(hel)
        hgens = gens[i]
        here = ext[i]
        label = [-1] * len(cyc)
        for ci, c in enumerate(cyc):
            if c in hset or label[ci] >= 0:
                continue
            label[ci] = ci
            stack = [ci]
            osize = 1
            while stack:
                cj = stack.pop()
                for h in hgens:
                    t = cidx[conj_l[cidx[h]][cyc[cj]]]
                    if label[t] < 0:
                        label[t] = ci
                        stack.append(t)
                        osize += 1
            g = list(hgens) + [c]
            kel = list(hel)
            for e in kel:
                work[e] = True
            reps = [0]
            rp = 0
            while rp < len(reps):
                r = reps[rp]
                rp += 1
                row = tab[r]
                for s in g:
                    t = row[s]
                    if not work[t]:
                        for h in hel:
                            e = tab[h][t]
                            work[e] = True
                            kel.append(e)
                        reps.append(t)
            for e in kel:
                work[e] = False
            sorted_el = np.sort(np.asarray(kel, dtype=np.int32))
            key = sorted_el.tobytes()
            j = index.get(key)
            if j is None:
                if len(elements) >= max_count:
                    return None
                j = len(elements)
                index[key] = j
                keys.append(key)
                elements.append(sorted_el)
                gens.append(tuple(hgens) + (c,))
                ext.append({})
            here[j] = here.get(j, 0) + osize
        i += 1
    return keys, elements, gens, ext


def extend_hom(ta, tb, gens_a, imgs_b, phi, used) -> int:
    phi[:] = -1
    used[:] = 0
    phi[0] = 0
    used[0] = 1
    queue = [0]
    head = 0
    ga = [int(g) for g in gens_a]
    hb = [int(h) for h in imgs_b]
    while head < len(queue):
        x = queue[head]
        head += 1
        px = int(phi[x])
        for g, h in zip(ga, hb):
            y = int(ta[x, g])
            img = int(tb[px, h])
            if phi[y] < 0:
                if used[img]:
                    return -1
                phi[y] = img
                used[img] = 1
                queue.append(y)
            elif phi[y] != img:
                return -1
    return len(queue)
