# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels. Signatures mirror :mod:`oillab._kernels_py`."""
import numpy as np

from libc.stdint cimport uint64_t, int64_t, int32_t, int8_t, uint8_t
from libc.stdlib cimport malloc, free

BACKEND = "compiled"

cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def down_closure(const int64_t[::1] topo, const int64_t[::1] indptr,
                 const int64_t[::1] indices, Py_ssize_t words):
    cdef Py_ssize_t n = topo.shape[0]
    out = np.zeros((n, words), dtype=np.uint64)
    cdef uint64_t[:, ::1] down = out
    cdef Py_ssize_t t, x, c, w, y
    with nogil:
        for t in range(n):
            x = topo[t]
            for c in range(indptr[x], indptr[x + 1]):
                y = indices[c]
                for w in range(words):
                    down[x, w] |= down[y, w]
            down[x, x >> 6] |= (<uint64_t>1) << (x & 63)
    return out


def glb_table(const uint64_t[:, ::1] down):
    cdef Py_ssize_t n = down.shape[0], W = down.shape[1]
    table = np.empty((n, n), dtype=np.int32)
    cdef int32_t[:, ::1] t = table
    cdef Py_ssize_t x, y, w, cand
    cdef uint64_t c
    cdef int code = 0
    cdef Py_ssize_t bx = -1, by = -1
    with nogil:
        for x in range(n):
            t[x, x] = <int32_t>x
            for y in range(x + 1, n):
                cand = -1
                w = W - 1
                while w >= 0:
                    c = down[x, w] & down[y, w]
                    if c:
                        cand = w * 64 + 63 - __builtin_clzll(c)
                        break
                    w -= 1
                if cand < 0:
                    code = 1
                    bx = x
                    by = y
                    break
                for w in range(W):
                    if down[cand, w] != (down[x, w] & down[y, w]):
                        code = 2
                        break
                if code:
                    bx = x
                    by = y
                    break
                t[x, y] = <int32_t>cand
                t[y, x] = <int32_t>cand
            if code:
                break
    return table, code, bx, by


def first_bad_triple(const int32_t[:, ::1] meet, const int32_t[:, ::1] join):
    cdef Py_ssize_t n = meet.shape[0], x, y, z
    cdef int32_t mxy
    cdef const int32_t* jy
    cdef const int32_t* mx
    with nogil:
        for x in range(n):
            mx = &meet[x, 0]
            for y in range(n):
                mxy = mx[y]
                jy = &join[y, 0]
                for z in range(n):
                    if mx[jy[z]] != join[mxy, mx[z]]:
                        with gil:
                            return (x, y, z)
    return None


def first_join_prime_failure(const int32_t[:, ::1] join, const uint64_t[:, ::1] down,
                             const uint64_t[::1] ji):
    cdef Py_ssize_t n = join.shape[0], W = down.shape[1], x, y, w, z
    cdef uint64_t miss
    with nogil:
        # join is symmetric; the first failing row has no failure below the diagonal
        for x in range(n):
            for y in range(x, n):
                z = join[x, y]
                for w in range(W):
                    miss = down[z, w] & ji[w] & ~(down[x, w] | down[y, w])
                    if miss:
                        with gil:
                            return (w * 64 + __builtin_ctzll(miss), x, y)
    return None


def first_nonassociative(const int32_t[:, ::1] table):
    cdef Py_ssize_t n = table.shape[0], x, y, z
    cdef int32_t txy
    cdef const int32_t* tx
    with nogil:
        for x in range(n):
            tx = &table[x, 0]
            for y in range(n):
                txy = tx[y]
                for z in range(n):
                    if table[txy, z] != tx[table[y, z]]:
                        with gil:
                            return (x, y, z)
    return None


def first_bound_mismatch(const int32_t[:, ::1] table, const uint64_t[:, ::1] down):
    cdef Py_ssize_t n = table.shape[0], W = down.shape[1], x, y, w, m
    with nogil:
        for x in range(n):
            for y in range(n):
                m = table[x, y]
                for w in range(W):
                    if down[m, w] != (down[x, w] & down[y, w]):
                        with gil:
                            return (x, y)
    return None


cdef inline Py_ssize_t _lookup(const int64_t[::1] keys, const int64_t[::1] order,
                               int64_t key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = keys.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    if lo < keys.shape[0] and keys[lo] == key:
        return order[lo]
    return -1


cdef int64_t DIRECT_KEYS = 1 << 24


def minmax_tables(const int64_t[:, ::1] coords, const int64_t[::1] weights,
                  const int64_t[::1] sorted_keys, const int64_t[::1] order):
    cdef Py_ssize_t n = coords.shape[0], m = coords.shape[1], x, y, i
    meet_arr = np.empty((n, n), dtype=np.int32)
    join_arr = np.empty((n, n), dtype=np.int32)
    cdef int32_t[:, ::1] meet = meet_arr
    cdef int32_t[:, ::1] join = join_arr
    cdef int64_t kmin, kmax, a, b, span = 1
    # coords are nonnegative; meets and joins stay inside the per-column bounding box
    for i in range(m):
        span += (np.asarray(coords[:, i]).max() if n else 0) * weights[i]
    cdef bint direct = span <= DIRECT_KEYS
    cdef int32_t[::1] slot
    if direct:
        slot_arr = np.full(span, -1, dtype=np.int32)
        slot_arr[np.asarray(sorted_keys)] = np.asarray(order, dtype=np.int32)
        slot = slot_arr
    with nogil:
        # full rows: sequential writes beat mirroring into columns
        for x in range(n):
            for y in range(n):
                kmin = 0
                kmax = 0
                for i in range(m):
                    a = coords[x, i]
                    b = coords[y, i]
                    if a < b:
                        kmin += a * weights[i]
                        kmax += b * weights[i]
                    else:
                        kmin += b * weights[i]
                        kmax += a * weights[i]
                if direct:
                    meet[x, y] = slot[kmin]
                    join[x, y] = slot[kmax]
                else:
                    meet[x, y] = <int32_t>_lookup(sorted_keys, order, kmin)
                    join[x, y] = <int32_t>_lookup(sorted_keys, order, kmax)
    return meet_arr, join_arr


def all_permutations(n):
    from ._kernels_py import all_permutations as _py
    return _py(n)


cdef bint _contains(const int8_t* p, int n, const int8_t* pat, int k,
                    const uint8_t* pbar, const int* vb_lo, const int* vb_hi,
                    const int* vb_at, int nvb, int* idx) noexcept nogil:
    cdef int depth = 0, a, b
    cdef bint ok
    cdef int8_t v
    if k == 0:
        return True
    if k > n:
        return False
    idx[0] = -1
    while depth >= 0:
        idx[depth] += 1
        if idx[depth] > n - k + depth:
            depth -= 1
            continue
        if depth > 0 and pbar[depth - 1] and idx[depth] != idx[depth - 1] + 1:
            depth -= 1
            continue
        v = p[idx[depth]]
        ok = True
        for a in range(depth):
            if (p[idx[a]] < v) != (pat[a] < pat[depth]):
                ok = False
                break
        if ok:
            for b in range(nvb):
                if vb_at[b] == depth and p[idx[vb_hi[b]]] - p[idx[vb_lo[b]]] != 1:
                    ok = False
                    break
        if ok:
            if depth == k - 1:
                return True
            depth += 1
            idx[depth] = idx[depth - 1]
    return False


cdef int _prep_bars(const int8_t[::1] pattern, const uint8_t[::1] val_bars,
                    int* vb_lo, int* vb_hi, int* vb_at):
    cdef int k = pattern.shape[0], v, nvb = 0, j
    cdef int where[64]
    for j in range(k):
        where[pattern[j]] = j
    for v in range(k - 1):
        if val_bars[v]:
            vb_lo[nvb] = where[v]
            vb_hi[nvb] = where[v + 1]
            vb_at[nvb] = where[v] if where[v] > where[v + 1] else where[v + 1]
            nvb += 1
    return nvb


def pattern_mask(const int8_t[:, ::1] perms, const int8_t[::1] pattern,
                 const uint8_t[::1] pos_bars, const uint8_t[::1] val_bars):
    cdef Py_ssize_t N = perms.shape[0], r
    cdef int n = perms.shape[1], k = pattern.shape[0]
    if k > 64:
        raise ValueError("pattern too long")
    out = np.zeros(N, dtype=bool)
    cdef uint8_t[::1] res = out.view(np.uint8)
    cdef int vb_lo[64]
    cdef int vb_hi[64]
    cdef int vb_at[64]
    cdef int idx[64]
    cdef uint8_t nobar[1]
    nobar[0] = 0
    cdef const uint8_t* pb = &pos_bars[0] if pos_bars.shape[0] else nobar
    cdef int nvb = _prep_bars(pattern, val_bars, vb_lo, vb_hi, vb_at)
    cdef const int8_t* pat = &pattern[0] if k else NULL
    with nogil:
        for r in range(N):
            res[r] = _contains(&perms[r, 0] if n else NULL, n, pat, k, pb,
                               vb_lo, vb_hi, vb_at, nvb, idx)
    return out


def count_avoiders(int n, const int8_t[::1] pattern, const uint8_t[::1] pos_bars,
                   const uint8_t[::1] val_bars):
    cdef int k = pattern.shape[0], i, j, t
    cdef int8_t tmp
    cdef long long count = 0
    if n == 0:
        return 0 if k == 0 else 1
    if k > 64 or n > 64:
        raise ValueError("size too large")
    cdef int vb_lo[64]
    cdef int vb_hi[64]
    cdef int vb_at[64]
    cdef int idx[64]
    cdef int8_t p[64]
    cdef uint8_t nobar[1]
    nobar[0] = 0
    cdef const uint8_t* pb = &pos_bars[0] if pos_bars.shape[0] else nobar
    cdef int nvb = _prep_bars(pattern, val_bars, vb_lo, vb_hi, vb_at)
    cdef const int8_t* pat = &pattern[0] if k else NULL
    for i in range(n):
        p[i] = i
    with nogil:
        while True:
            if not _contains(p, n, pat, k, pb, vb_lo, vb_hi, vb_at, nvb, idx):
                count += 1
            # next permutation, lexicographic
            i = n - 2
            while i >= 0 and p[i] > p[i + 1]:
                i -= 1
            if i < 0:
                break
            j = n - 1
            while p[j] < p[i]:
                j -= 1
            tmp = p[i]; p[i] = p[j]; p[j] = tmp
            i += 1
            j = n - 1
            while i < j:
                tmp = p[i]; p[i] = p[j]; p[j] = tmp
                i += 1
                j -= 1
    return count
