"""Brute-force oracles, independent of the package (itertools and math only)."""
from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache
from math import comb, factorial, prod


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def motzkin(n: int) -> int:
    # M_n = M_{n-1} + sum_{k} M_k M_{n-2-k}
    if n < 2:
        return 1
    return motzkin(n - 1) + sum(motzkin(k) * motzkin(n - 2 - k) for k in range(n - 1))


@lru_cache(maxsize=None)
def schroeder(n: int) -> int:
    # r_n = r_{n-1} + sum_{k} r_k r_{n-1-k}
    if n == 0:
        return 1
    return schroeder(n - 1) + sum(schroeder(k) * schroeder(n - 1 - k) for k in range(n))


PATH_STEPS = {"dyck": {"U": (1, 1), "D": (1, -1)},
              "motzkin": {"U": (1, 1), "H": (1, 0), "D": (1, -1)},
              "schroeder": {"U": (1, 1), "T": (2, 0), "D": (1, -1)}}
PATH_WIDTH = {"dyck": lambda n: 2 * n, "motzkin": lambda n: n, "schroeder": lambda n: 2 * n}


def brute_paths(family: str, n: int) -> set[str]:
    steps, width = PATH_STEPS[family], PATH_WIDTH[family](n)
    out = set()

    def walk(x, y, word):
        if y < 0 or x > width:
            return
        if x == width:
            if y == 0:
                out.add(word)
            return
        for s, (dx, dy) in steps.items():
            walk(x + dx, y + dy, word + s)

    walk(0, 0, "")
    return out


def path_heights(family: str, word: str) -> tuple[int, ...]:
    """Height at each integer abscissa (T keeps its height at its midpoint)."""
    h = [0]
    for s in word:
        dx, dy = PATH_STEPS[family][s]
        h.extend([h[-1]] * (dx - 1))
        h.append(h[-1] + dy)
    return tuple(h)


def transitive_closure(n: int, relations) -> set[tuple[int, int]]:
    below = {(a, b) for a, b in relations}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(below), repeat=2):
            if b == c and (a, d) not in below:
                below.add((a, d))
                changed = True
    return below


def brute_lower_ideals(n: int, relations) -> list[frozenset]:
    rel = transitive_closure(n, relations)
    out = []
    for mask in range(1 << n):
        S = {i for i in range(n) if mask >> i & 1}
        if all(a in S for a, b in rel if b in S):
            out.append(frozenset(S))
    return out


def random_relations(rng, n: int, density: float) -> list[tuple[int, int]]:
    """Random acyclic relation: a ≺ b only when a precedes b in a random order."""
    order = list(range(n))
    rng.shuffle(order)
    return [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]


def brute_p_partitions(p: int, relations, n: int) -> list[tuple[int, ...]]:
    """Maps [p] → [n] with f(a) ≤ f(b) for a ≺ b, strictly when a > b (1-based)."""
    rel = transitive_closure(p, [(a - 1, b - 1) for a, b in relations])
    out = []
    for f in itertools.product(range(1, n + 1), repeat=p):
        if all(f[a] < f[b] if a > b else f[a] <= f[b] for a, b in rel):
            out.append(f)
    return out


def _ekey(v: int) -> int:
    return 2 * abs(v) - (v < 0)


def brute_enriched(p: int, relations, n: int) -> list[tuple[int, ...]]:
    """Maps [p] → {±1..±n}: f(a) ⊴ f(b) for a ≺ b; ties at a positive value
    need a < b, ties at a negative value need a > b."""
    rel = transitive_closure(p, [(a - 1, b - 1) for a, b in relations])
    values = [v for m in range(1, n + 1) for v in (-m, m)]
    out = []
    for f in itertools.product(values, repeat=p):
        ok = True
        for a, b in rel:
            ka, kb = _ekey(f[a]), _ekey(f[b])
            if ka > kb or (ka == kb and (a > b if f[a] > 0 else a < b)):
                ok = False
                break
        if ok:
            out.append(f)
    return out


def hook_content(lam, n: int) -> int:
    """s_λ(1ⁿ) by the hook-content formula."""
    lam = [p for p in lam if p]
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    num = den = 1
    for i, row in enumerate(lam):
        for j in range(row):
            num *= n + j - i
            den *= (row - j - 1) + (conj[j] - i - 1) + 1
    return num // den


def young_interval_count(lam, mu) -> int:
    k = max(len(lam), len(mu))
    lo = list(lam) + [0] * (k - len(lam))
    hi = list(mu) + [0] * (k - len(mu))
    return sum(1 for nu in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
               if all(x >= y for x, y in zip(nu, nu[1:])))


def descent_set(w) -> frozenset:
    return frozenset(i for i in range(1, len(w)) if w[i - 1] > w[i])


def peak_set(w) -> frozenset:
    return frozenset(i for i in range(2, len(w)) if w[i - 2] < w[i - 1] > w[i])


def descent_counts(n: int) -> Counter:
    return Counter(descent_set(w) for w in itertools.permutations(range(1, n + 1)))


def peak_counts(n: int) -> Counter:
    return Counter(peak_set(w) for w in itertools.permutations(range(1, n + 1)))


def lehmer(w) -> tuple[int, ...]:
    return tuple(sum(1 for b in w[i + 1:] if b < a) for i, a in enumerate(w))


def inversion_by_value(w) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(w)}
    return tuple(sum(1 for u in w[pos[v] + 1:] if u < v) for v in range(1, len(w) + 1))


def contains_classical(w, pattern) -> bool:
    k = len(pattern)
    rank = sorted(range(k), key=lambda i: pattern[i])
    for idx in itertools.combinations(range(len(w)), k):
        vals = [w[i] for i in idx]
        if sorted(range(k), key=lambda i: vals[i]) == rank:
            return True
    return False


def avoiders(n: int, pattern) -> int:
    return sum(1 for w in itertools.permutations(range(1, n + 1)) if not contains_classical(w, pattern))


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def stirling1(n: int, k: int) -> int:
    """Unsigned, c(n, k)."""
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return (n - 1) * stirling1(n - 1, k) + stirling1(n - 1, k - 1)


def narayana(n: int, k: int) -> int:
    return comb(n, k) * comb(n, k - 1) // n if 1 <= k <= n else 0


def brute_rgfs(n: int, k: int) -> list[tuple[int, ...]]:
    out = []
    for w in itertools.product(range(1, k + 1), repeat=n):
        top, ok = 0, True
        for v in w:
            if v > top + 1:
                ok = False
                break
            top = max(top, v)
        if ok and top == k:
            out.append(w)
    return out


def is_noncrossing_blocks(w) -> bool:
    """No a<b<c<d with w_a = w_c ≠ w_b = w_d."""
    n = len(w)
    for a, b, c, d in itertools.combinations(range(n), 4):
        if w[a] == w[c] != w[b] == w[d]:
            return False
    return True


def lattice_by_order(elements, leq):
    """Meet/join tables from an order relation, by exhaustive search.
    Entries are None where the bound does not exist."""
    n = len(elements)
    L = [[leq(elements[i], elements[j]) for j in range(n)] for i in range(n)]

    def glb(i, j):
        lows = [z for z in range(n) if L[z][i] and L[z][j]]
        top = [z for z in lows if all(L[y][z] for y in lows)]
        return top[0] if top else None

    def lub(i, j):
        ups = [z for z in range(n) if L[i][z] and L[j][z]]
        bot = [z for z in ups if all(L[z][y] for y in ups)]
        return bot[0] if bot else None

    return ([[glb(i, j) for j in range(n)] for i in range(n)],
            [[lub(i, j) for j in range(n)] for i in range(n)])


def asm(n: int) -> int:
    return prod(factorial(3 * j + 1) for j in range(n)) // prod(factorial(n + j) for j in range(n))
