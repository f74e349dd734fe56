# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled inner loops.

Every function here has a line-for-line counterpart in ``_kernels_py``; the two
must return identical results. Permutation arrays are ``int32[k, n]`` with
``perms[j, x]`` the image of ``x`` under the j-th map. Dense tables are
``uint16[n, n]``.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int32_t i32
ctypedef cnp.uint16_t u16
ctypedef cnp.uint8_t u8
ctypedef cnp.uint64_t u64


def reach(const i32[:, ::1] perms, const u8[::1] seeds):
    """Smallest superset of ``seeds`` closed under every map in ``perms``."""
    cdef Py_ssize_t n = seeds.shape[0]
    cdef Py_ssize_t k = perms.shape[0]
    cdef Py_ssize_t i, j, top = 0
    cdef i32 x, y
    out = np.zeros(n, dtype=np.uint8)
    stack = np.empty(n, dtype=np.int32)
    cdef u8[::1] o = out
    cdef i32[::1] st = stack
    for i in range(n):
        if seeds[i]:
            o[i] = 1
            st[top] = <i32>i
            top += 1
    while top > 0:
        top -= 1
        x = st[top]
        for j in range(k):
            y = perms[j, x]
            if not o[y]:
                o[y] = 1
                st[top] = y
                top += 1
    return out.view(np.bool_)


def orbit_labels(const i32[:, ::1] perms, Py_ssize_t n):
    """Label each point by the least point of its orbit."""
    cdef Py_ssize_t k = perms.shape[0]
    cdef Py_ssize_t s, j, top
    cdef i32 x, y
    labels = np.full(n, -1, dtype=np.int32)
    stack = np.empty(n, dtype=np.int32)
    cdef i32[::1] lab = labels
    cdef i32[::1] st = stack
    for s in range(n):
        if lab[s] >= 0:
            continue
        lab[s] = <i32>s
        st[0] = <i32>s
        top = 1
        while top > 0:
            top -= 1
            x = st[top]
            for j in range(k):
                y = perms[j, x]
                if lab[y] < 0:
                    lab[y] = <i32>s
                    st[top] = y
                    top += 1
    return labels


cdef bytes _pack(u8[::1] mask, Py_ssize_t n):
    cdef Py_ssize_t nb = (n + 7) // 8
    cdef bytearray buf = bytearray(nb)
    cdef unsigned char* p = buf
    cdef Py_ssize_t i
    for i in range(n):
        if mask[i]:
            p[i >> 3] |= <unsigned char>(1 << (i & 7))
    return bytes(buf)


def subgroup_lattice(const u16[:, ::1] table, const u16[:, ::1] table_t, const i32[::1] cyclic_reps,
                     const i32[:, ::1] conj, const i32[::1] cyc_index, Py_ssize_t max_count):
    """Cyclic-extension enumeration of every subgroup.

    ``table_t`` is the transpose of ``table``; cosets ``H t`` are read from
    its row ``t``, which keeps memory access sequential. ``conj[j]`` is
    conjugation by ``cyclic_reps[j]`` and ``cyc_index[x]`` is the
    position of the least generator of ``<x>`` in ``cyclic_reps`` (-1 for the
    identity). Representatives conjugate under ``H`` give the same ``<H, c>``,
    so one closure per ``H``-orbit suffices.

    Returns ``(keys, elements, gens, ext)`` or ``None`` once ``max_count`` is
    exceeded. Elements are sorted and keys are their bytes. ``ext[i]`` maps
    the index of each ``<H_i, c>`` (``c`` a cyclic representative outside
    ``H_i``) to the number of such ``c`` reaching it.

    Closures are looked up by an XOR of fixed random words over their
    elements; every hit is confirmed element by element, so the hash only
    speeds up the lookup.
    """
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t nc = cyclic_reps.shape[0]
    cdef Py_ssize_t i, ci, kcount, hsize, rp, nreps, gi, ng, hi, t, top, osize, cj, row
    cdef i32 c, r, s, e
    work = np.zeros(n, dtype=np.uint8)
    hmask_arr = np.zeros(n, dtype=np.uint8)
    kel_arr = np.empty(n, dtype=np.int32)
    reps_arr = np.empty(n, dtype=np.int32)
    gbuf_arr = np.empty(64, dtype=np.int32)
    olab_arr = np.empty(max(nc, 1), dtype=np.int32)
    ostack_arr = np.empty(max(nc, 1), dtype=np.int32)
    cdef u8[::1] wm = work
    cdef u8[::1] hm = hmask_arr
    cdef i32[::1] kel = kel_arr
    cdef i32[::1] reps = reps_arr
    cdef i32[::1] gbuf = gbuf_arr
    cdef i32[::1] olab = olab_arr
    cdef i32[::1] ostack = ostack_arr
    cdef i32[::1] hel
    cdef i32[::1] ev
    cdef u64 h
    cdef bint same
    zob_arr = np.random.default_rng(0x5EED).integers(0, 2**64, size=n, dtype=np.uint64, endpoint=False)
    cdef u64[::1] zob = zob_arr

    trivial = np.zeros(1, dtype=np.int32)
    keys = [trivial.tobytes()]
    index = {int(zob[0]): [0]}
    sizes = [1]
    elements = [trivial]
    gens = [()]
    ext = [{}]

    i = 0
    while i < len(elements):
        hel = elements[i]
        hsize = hel.shape[0]
        for hi in range(hsize):
            hm[hel[hi]] = 1
        hgens = gens[i]
        ng = len(hgens)
        for gi in range(ng):
            gbuf[gi] = hgens[gi]
        here = ext[i]
        for ci in range(nc):
            olab[ci] = -1
        for ci in range(nc):
            c = cyclic_reps[ci]
            if hm[c] or olab[ci] >= 0:
                continue
            # orbit of <c> under conjugation by H
            olab[ci] = <i32>ci
            ostack[0] = <i32>ci
            top = 1
            osize = 1
            while top > 0:
                top -= 1
                cj = ostack[top]
                for gi in range(ng):
                    row = cyc_index[gbuf[gi]]
                    t = cyc_index[conj[row, cyclic_reps[cj]]]
                    if olab[t] < 0:
                        olab[t] = <i32>ci
                        ostack[top] = <i32>t
                        top += 1
                        osize += 1
            gbuf[ng] = c
            kcount = 0
            h = 0
            for hi in range(hsize):
                e = hel[hi]
                wm[e] = 1
                kel[kcount] = e
                kcount += 1
                h ^= zob[e]
            reps[0] = 0
            nreps = 1
            rp = 0
            while rp < nreps:
                r = reps[rp]
                rp += 1
                for gi in range(ng + 1):
                    s = gbuf[gi]
                    t = table[r, s]
                    if not wm[t]:
                        for hi in range(hsize):
                            e = table_t[t, hel[hi]]
                            wm[e] = 1
                            kel[kcount] = e
                            kcount += 1
                            h ^= zob[e]
                        reps[nreps] = <i32>t
                        nreps += 1
            j = None
            bucket = index.get(h)
            if bucket is not None:
                for cand in bucket:
                    if sizes[cand] != kcount:
                        continue
                    ev = elements[cand]
                    same = True
                    for hi in range(kcount):
                        if not wm[ev[hi]]:
                            same = False
                            break
                    if same:
                        j = cand
                        break
            for hi in range(kcount):
                wm[kel[hi]] = 0
            if j is None:
                if len(elements) >= max_count:
                    return None
                j = len(elements)
                sorted_el = np.sort(kel_arr[:kcount])
                if bucket is None:
                    index[h] = [j]
                else:
                    bucket.append(j)
                keys.append(sorted_el.tobytes())
                elements.append(sorted_el)
                sizes.append(kcount)
                gens.append(tuple(hgens) + (int(c),))
                ext.append({})
            here[j] = here.get(j, 0) + osize
        for hi in range(hsize):
            hm[hel[hi]] = 0
        i += 1
    return keys, elements, gens, ext


def extend_hom(const u16[:, ::1] ta, const u16[:, ::1] tb,
               const i32[::1] gens_a, const i32[::1] imgs_b,
               i32[::1] phi, u8[::1] used):
    """Grow a partial map over ``<gens_a>`` by breadth-first search.

    ``phi`` and ``used`` are overwritten. Returns the size of the mapped
    subgroup, or -1 when the assignment is not an injective homomorphism.
    """
    cdef Py_ssize_t na = ta.shape[0]
    cdef Py_ssize_t nb = tb.shape[0]
    cdef Py_ssize_t k = gens_a.shape[0]
    cdef Py_ssize_t head = 0, tail = 1, j, i
    cdef i32 x, y, img
    for i in range(na):
        phi[i] = -1
    for i in range(nb):
        used[i] = 0
    queue_arr = np.empty(na, dtype=np.int32)
    cdef i32[::1] queue = queue_arr
    phi[0] = 0
    used[0] = 1
    queue[0] = 0
    while head < tail:
        x = queue[head]
        head += 1
        for j in range(k):
            y = ta[x, gens_a[j]]
            img = tb[phi[x], imgs_b[j]]
            if phi[y] < 0:
                if used[img]:
                    return -1
                phi[y] = img
                used[img] = 1
                queue[tail] = y
                tail += 1
            elif phi[y] != img:
                return -1
    return tail
