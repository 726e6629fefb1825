"""Pure-Python (numpy) implementations of the hot kernels.

Every function here has a twin with the same signature in the compiled
``_kernels`` extension; :mod:`oillab.kernels` picks one at import time.
Bitsets are ``uint64`` rows: bit ``j`` of row ``x`` is word ``j // 64``,
bit ``j % 64``.
"""
from itertools import combinations

import numpy as np

BACKEND = "python"

_U64 = np.uint64


def _bit_length32(v):
    # exact for v < 2**32; frexp gives v = m * 2**e with m in [0.5, 1)
    return np.frexp(v.astype(np.float64))[1].astype(np.int64)


def _highest_bit(rows):
    """Index of the highest set bit of each bitset row, -1 for empty rows."""
    nz = rows != 0
    has = nz.any(axis=1)
    w = rows.shape[1]
    last = (w - 1) - np.argmax(nz[:, ::-1], axis=1)
    word = rows[np.arange(rows.shape[0]), last]
    hi = (word >> _U64(32)).astype(np.int64)
    lo = (word & _U64(0xFFFFFFFF)).astype(np.int64)
    bl = np.where(hi > 0, 32 + _bit_length32(hi), _bit_length32(lo))
    return np.where(has, last * 64 + bl - 1, -1)


def _lowest_bit(row):
    for w, word in enumerate(row.tolist()):
        if word:
            return w * 64 + ((word & -word).bit_length() - 1)
    return -1


def down_closure(topo, indptr, indices, words):
    n = len(topo)
    down = np.zeros((n, words), dtype=np.uint64)
    for x in topo.tolist():
        lo, hi = indptr[x], indptr[x + 1]
        if hi > lo:
            down[x] = np.bitwise_or.reduce(down[indices[lo:hi]], axis=0)
        down[x, x >> 6] |= _U64(1) << _U64(x & 63)
    return down


def glb_table(down):
    """Greatest lower bounds from down-sets indexed by a linear extension.

    Returns ``(table, code, x, y)``; ``code`` is 0 on success, 1 when the
    pair ``(x, y)`` has no common lower bound, 2 when it has no greatest one.
    """
    n = down.shape[0]
    table = np.empty((n, n), dtype=np.int32)
    for x in range(n):
        common = down[x] & down
        cand = _highest_bit(common)
        empty = cand < 0
        bad = empty | (down[cand] != common).any(axis=1)
        if bad.any():
            y = int(np.argmax(bad))
            return table, 1 if empty[y] else 2, min(x, y), max(x, y)
        table[x] = cand
    return table, 0, -1, -1


def first_bad_triple(meet, join):
    n = meet.shape[0]
    for x in range(n):
        mx = meet[x]
        lhs = mx[join]
        rhs = join[mx[:, None], mx[None, :]]
        bad = lhs != rhs
        if bad.any():
            y, z = divmod(int(np.argmax(bad)), n)
            return (x, y, z)
    return None


def first_join_prime_failure(join, down, ji):
    n = join.shape[0]
    # join is symmetric; the first failing row has no failure below the diagonal
    for x in range(n):
        lhs = down[join[x, x:]] & ji
        rhs = (down[x] | down[x:]) & ji
        miss = lhs & ~rhs
        bad = (miss != 0).any(axis=1)
        if bad.any():
            y = int(np.argmax(bad))
            return (_lowest_bit(miss[y]), x, x + y)
    return None


def first_nonassociative(table):
    n = table.shape[0]
    for x in range(n):
        left = table[table[x]]
        right = table[x][table]
        bad = left != right
        if bad.any():
            y, z = divmod(int(np.argmax(bad)), n)
            return (x, y, z)
    return None


def first_bound_mismatch(table, down):
    n = table.shape[0]
    for x in range(n):
        bad = (down[table[x]] != (down[x] & down)).any(axis=1)
        if bad.any():
            return (x, int(np.argmax(bad)))
    return None


def minmax_tables(coords, weights, sorted_keys, order):
    n = coords.shape[0]
    meet = np.empty((n, n), dtype=np.int32)
    join = np.empty((n, n), dtype=np.int32)
    last = len(sorted_keys) - 1

    def lookup(keys):
        pos = np.minimum(np.searchsorted(sorted_keys, keys), last)
        return np.where(sorted_keys[pos] == keys, order[pos], -1)

    for x in range(n):
        meet[x] = lookup(np.minimum(coords[x], coords) @ weights)
        join[x] = lookup(np.maximum(coords[x], coords) @ weights)
    return meet, join


def all_permutations(n):
    """All permutations of ``range(n)`` in lexicographic order, as int8 rows."""
    perms = np.zeros((1, 0), dtype=np.int8)
    for m in range(1, n + 1):
        # prepend a first value v and renumber the (m-1)-permutation around it
        blocks = []
        for v in range(m):
            rest = perms + (perms >= v)
            blocks.append(np.hstack([np.full((len(perms), 1), v, dtype=np.int8), rest.astype(np.int8)]))
        perms = np.vstack(blocks)
    return perms


def pattern_mask(perms, pattern, pos_bars, val_bars):
    """Rows of ``perms`` containing the (bivincular) pattern."""
    perms = np.asarray(perms)
    k = len(pattern)
    n = perms.shape[1]
    found = np.zeros(len(perms), dtype=bool)
    if k == 0:
        found[:] = True
        return found
    where = np.argsort(pattern)  # pattern position holding each value
    order_pairs = [(where[v], where[v + 1]) for v in range(k - 1)]
    value_pairs = [(where[v], where[v + 1]) for v in range(k - 1) if val_bars[v]]
    for combo in combinations(range(n), k):
        if any(pos_bars[j] and combo[j + 1] != combo[j] + 1 for j in range(k - 1)):
            continue
        sub = perms[:, combo].astype(np.int16)
        ok = ~found
        for a, b in order_pairs:
            ok &= sub[:, a] < sub[:, b]
        for a, b in value_pairs:
            ok &= sub[:, b] - sub[:, a] == 1
        found |= ok
    return found


def count_avoiders(n, pattern, pos_bars, val_bars):
    if n == 0:
        return 0 if len(pattern) == 0 else 1
    perms = all_permutations(n)
    return int((~pattern_mask(perms, pattern, pos_bars, val_bars)).sum())
