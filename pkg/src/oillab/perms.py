"""Permutations, inversion tables, and the two middle orders.

Words are 1-based in the public API (``(4, 1, 5, 6, 3, 2)``). Bulk work runs
on 0-based ``int8`` rows from :func:`all_permutations`, which are in
lexicographic order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import config, kernels
from .errors import (
    CountMismatch,
    DivisibilityFailed,
    InputError,
    InternalInvariantViolated,
    InvalidPattern,
    NotAdmissible,
    NotALattice,
    OutOfBounds,
)
from .lattice import (
    Certificate,
    Poset,
    VectorLattice,
    check_distributive,
    compute_lattice,
    oil_check,
)

IOTA, KAPPA = "iota", "kappa"
OVERLINE = "̅"


# --------------------------------------------------------------------------- words


@dataclass(frozen=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(v) for v in self.word)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise InputError(f"not a permutation of 1..{len(w)}: {w}")
        object.__setattr__(self, "word", w)

    @property
    def n(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return format_word(self.word)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Digit string for n ≤ 9 (``"415632"``), comma-separated otherwise."""
        text = text.strip()
        if "," in text:
            return cls(tuple(int(t) for t in text.split(",") if t.strip()))
        if not text.isdigit():
            raise InputError(f"cannot parse permutation {text!r}")
        return cls(tuple(int(c) for c in text))


def as_permutation(x) -> Permutation:
    if isinstance(x, Permutation):
        return x
    if isinstance(x, str):
        return Permutation.parse(x)
    return Permutation(tuple(x))


def format_word(word: Sequence[int]) -> str:
    word = [int(v) for v in word]
    if len(word) <= 9:
        return "".join(map(str, word))
    return ",".join(map(str, word))


@lru_cache(maxsize=4)
def _perms(n: int) -> np.ndarray:
    config.enforce_param("permutation length", n, config.PERM_CAP)
    rows = kernels.all_permutations(n)
    rows.setflags(write=False)
    return rows


def all_permutations(n: int) -> np.ndarray:
    """0-based rows of 𝔖_n in lexicographic order (read-only, cached)."""
    if n < 0:
        raise InputError("n must be nonnegative")
    return _perms(n)


def kappa_rows(perms: np.ndarray) -> np.ndarray:
    """κ_i = #{j > i : π_j < π_i} for every row."""
    perms = np.asarray(perms)
    m, n = perms.shape
    out = np.zeros((m, n), dtype=np.int8)
    for i in range(n - 1):
        out[:, i] = (perms[:, i + 1:] < perms[:, i:i + 1]).sum(axis=1)
    return out


def iota_rows(perms: np.ndarray) -> np.ndarray:
    """ι_v = number of inversions with top v, i.e. κ at the position of v."""
    perms = np.asarray(perms)
    return np.take_along_axis(kappa_rows(perms), np.argsort(perms, axis=1), axis=1)


def encode_tables(perm) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(ι(π), κ(π))."""
    p = as_permutation(perm)
    row = np.asarray([p.word], dtype=np.int16) - 1
    return tuple(iota_rows(row)[0].tolist()), tuple(kappa_rows(row)[0].tolist())


def check_table(table: Sequence[int], kind: str) -> None:
    n = len(table)
    for i, v in enumerate(table, start=1):
        hi = i - 1 if kind == IOTA else n - i
        if not 0 <= v <= hi:
            raise OutOfBounds(i, f"{kind} entry {i} is {v}, outside [0, {hi}]")


def decode_table(table: Sequence[int], kind: str = KAPPA) -> Permutation:
    """The permutation with the given ι or κ table."""
    if kind not in (IOTA, KAPPA):
        raise InputError(f"unknown table kind {kind!r}")
    table = [int(v) for v in table]
    check_table(table, kind)
    n = len(table)
    if kind == KAPPA:
        rest = list(range(1, n + 1))
        return Permutation(tuple(rest.pop(k) for k in table))
    # insert 1, 2, …, n; value v goes left of exactly ι_v smaller values
    word: list[int] = []
    for v, k in enumerate(table, start=1):
        word.insert(len(word) - k, v)
    return Permutation(tuple(word))


def landmark_sets(perm) -> tuple[frozenset, frozenset, frozenset]:
    """(Des π, Pk π, Pin π); descents and peaks are positions, pinnacles values."""
    w = as_permutation(perm).word
    n = len(w)
    des = frozenset(i for i in range(1, n) if w[i - 1] > w[i])
    pk = frozenset(i for i in range(2, n) if w[i - 2] < w[i - 1] > w[i])
    return des, pk, frozenset(w[i - 1] for i in pk)


def pinnacle_word(perm) -> tuple[int, ...]:
    """Pinnacle values read left to right."""
    w = as_permutation(perm).word
    return tuple(w[i] for i in range(1, len(w) - 1) if w[i - 1] < w[i] > w[i + 1])


def _set_masks(flags: np.ndarray) -> np.ndarray:
    """Bit i-1 set when position i is flagged."""
    weights = (1 << np.arange(flags.shape[1], dtype=np.int64))
    return flags.astype(np.int64) @ weights if flags.shape[1] else np.zeros(len(flags), np.int64)


def _mask_of(S: Iterable[int]) -> int:
    return sum(1 << (i - 1) for i in S)


def descent_masks(perms: np.ndarray) -> np.ndarray:
    return _set_masks(perms[:, :-1] > perms[:, 1:])


def peak_masks(perms: np.ndarray) -> np.ndarray:
    n = perms.shape[1]
    flags = np.zeros((len(perms), max(n - 1, 0)), dtype=bool)
    if n >= 3:
        # position i (1-based) ↔ column i-1
        flags[:, 1:] = (perms[:, :-2] < perms[:, 1:-1]) & (perms[:, 1:-1] > perms[:, 2:])
    return _set_masks(flags)


def _normalize_set(S) -> frozenset:
    S = frozenset(int(i) for i in S)
    if any(i < 1 for i in S):
        raise InputError(f"sets of positions hold positive integers, got {sorted(S)}")
    return S


def descent_count(S, n: int) -> int:
    """d_n(S); zero when n ≤ max S."""
    S = _normalize_set(S)
    if n <= max(S, default=0) or n < 0:
        return 0 if S or n < 0 else 1
    if n == 0:
        return 1
    return int((descent_masks(all_permutations(n)) == _mask_of(S)).sum())


def descent_set_counts(n: int) -> dict[frozenset, int]:
    """d_n(S) for every S ⊆ [n-1] with d_n(S) > 0."""
    if n == 0:
        return {frozenset(): 1}
    masks, counts = np.unique(descent_masks(all_permutations(n)), return_counts=True)
    return {frozenset(i + 1 for i in range(n) if m >> i & 1): int(c)
            for m, c in zip(masks.tolist(), counts.tolist())}


# --------------------------------------------------------------------------- middle orders


def _label_fn(perms: np.ndarray):
    return lambda i: format_word((perms[i] + 1).tolist())


def middle_lattice(n: int, kind: str = IOTA) -> VectorLattice:
    """𝔖_n ordered componentwise on ι (middle order) or κ (κ-middle order).

    Elements are in lexicographic order of the permutations.
    """
    if kind not in (IOTA, KAPPA):
        raise InputError(f"unknown table kind {kind!r}")
    if n < 1:
        raise InputError("n must be at least 1")
    config.enforce_param("middle order size", n, config.MIDDLE_CAP)
    perms = all_permutations(n)
    coords = iota_rows(perms) if kind == IOTA else kappa_rows(perms)
    return VectorLattice(coords, _label_fn(perms), name=f"middle-{kind}(n={n})",
                         params={"n": n, "kind": kind})


def _restricted(perms: np.ndarray, coords: np.ndarray, name: str, params: dict) -> VectorLattice:
    lat = VectorLattice(coords, _label_fn(perms), name=name, params=params)
    verify_closure(lat)
    return lat


def verify_closure(lat: VectorLattice, pair_cap: int = 4 * 10**6, seed: int = 0) -> str:
    """Re-check that the element set is closed under componentwise min/max.

    All pairs are tested when there are at most ``pair_cap`` of them, else a
    seeded sample of that many. Raises ClosureViolated; returns the method.
    """
    n = lat.size
    if n * n <= pair_cap:
        ar = np.arange(n)
        step = max(1, pair_cap // (4 * n))
        for start in range(0, n, step):
            xs = np.repeat(ar[start:start + step], n)
            ys = np.tile(ar, len(ar[start:start + step]))
            lat.meet_many(xs, ys)
            lat.join_many(xs, ys)
        return "exhaustive"
    rng = np.random.default_rng(seed)
    xs, ys = rng.integers(0, n, pair_cap), rng.integers(0, n, pair_cap)
    lat.meet_many(xs, ys)
    lat.join_many(xs, ys)
    return "sampled"


def descent_class_lattice(S, n: int) -> VectorLattice:
    """D_n(S) under the κ-middle order, filtered from 𝔖_n."""
    S = _normalize_set(S)
    perms = all_permutations(n)
    keep = descent_masks(perms) == _mask_of(S)
    if not keep.any():
        raise InputError(f"no permutation of length {n} has descent set {sorted(S)}")
    kap = kappa_rows(perms[keep])
    # Des κ(π) = Des π, checked on every member
    if (descent_masks(kap) != _mask_of(S)).any():
        raise InternalInvariantViolated("descent set of κ(π) differs from that of π")
    return _restricted(perms[keep], kap, f"D_{n}({_set_str(S)})", {"S": sorted(S), "n": n})


def avoidance_class_lattice(n: int) -> VectorLattice:
    """Av_n(213) under the middle order, filtered from 𝔖_n by pattern search."""
    perms = all_permutations(n)
    pat = parse_pattern("213")
    keep = ~kernels.pattern_mask(np.ascontiguousarray(perms), *pat.kernel_args())
    io = iota_rows(perms[keep])
    if (io[:, 1:] < io[:, :-1]).any():
        raise InternalInvariantViolated("a 213-avoider has a non-monotone inversion table")
    return _restricted(perms[keep], io, f"Av_{n}(213)", {"n": n})


def _set_str(S) -> str:
    return "{" + ",".join(map(str, sorted(S))) + "}"


# --------------------------------------------------------------------------- certificates


def _guard(got, want, where):
    if got != want:
        raise CountMismatch(f"{where}: ideal sizes {got}, expected {want}")


def factorial_certificate(n: int) -> Certificate:
    """Log-convexity of n! inside the middle order on 𝔖_{n+1}.

    I = {ι_{n+1} = 0} and J = {ι_i < i−1 for i ≥ 2}, both lower.
    """
    if n < 2:
        raise InputError("factorial certificates need n ≥ 2")
    lat = middle_lattice(n + 1, IOTA)
    c = lat.coords
    I = lat.lower_ideal(c[:, n] == 0)
    J = lat.lower_ideal((c[:, 1:] < np.arange(1, n + 1)).all(axis=1))
    f = [1] * (n + 2)
    for k in range(1, n + 2):
        f[k] = f[k - 1] * k
    _guard((I.size, J.size, int((I.members & J.members).sum())), (f[n], f[n], f[n - 1]),
           f"middle order on S_{n + 1}")
    return oil_check(lat, I, J, family_params={"n": n})


def descent_class_certificate(S, n: int) -> Certificate:
    """Log-concavity of d_n(S) at n inside D_{n+1}(S), κ-middle order.

    I = {κ_i ≤ n−i for i ≤ n} (lower, i.e. π_{n+1} = n+1). The upper ideal
    is J = {κ_i ≥ 1 for i < m, κ_m ≥ 2} with m = max S, which is the whole
    class when S is empty.
    """
    S = _normalize_set(S)
    m = max(S, default=0)
    if n <= m + 1:
        raise InputError(f"descent certificates need n > max S + 1 (got n={n}, S={sorted(S)})")
    lat = descent_class_lattice(S, n + 1)
    c = lat.coords
    I = lat.lower_ideal((c[:, :n] <= np.arange(n - 1, -1, -1)).all(axis=1))
    Jm = np.ones(lat.size, dtype=bool)
    if m:
        Jm = (c[:, :m - 1] >= 1).all(axis=1) & (c[:, m - 1] >= 2)
    J = lat.upper_ideal(Jm)
    dn, dm = descent_count(S, n), descent_count(S, n - 1)
    _guard((I.size, J.size, int((I.members & J.members).sum())), (dn, dn, dm), lat.name)
    return oil_check(lat, I, J, family_params={"S": sorted(S), "n": n})


def literal_descent_upper_set(S, n: int) -> np.ndarray:
    """Members of D_{n+1}(S) with κ ∈ [1,n]×[1,n−1]×⋯×[1,1]×[0,0].

    Kept for comparison: κ_n ≥ 1 > κ_{n+1} puts n in the descent set, so
    this set is empty whenever n ∉ S.
    """
    lat = descent_class_lattice(S, n + 1)
    return (lat.coords[:, :n] >= 1).all(axis=1)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def av213_certificate(n: int) -> Certificate:
    """Log-convexity of C_n inside Av_{n+1}(213) under the middle order.

    Upper ideals I = {ι ≥ (0,1ⁿ)} and J = {ι ≥ (0ⁿ,n)}.
    """
    if n < 2:
        raise InputError("Catalan certificates need n ≥ 2")
    config.enforce_param("middle order size", n + 1, config.MIDDLE_CAP)
    lat = avoidance_class_lattice(n + 1)
    c = lat.coords
    I = lat.upper_ideal((c[:, 1:] >= 1).all(axis=1))
    J = lat.upper_ideal(c[:, n] >= n)
    _guard((I.size, J.size, int((I.members & J.members).sum())),
           (catalan(n), catalan(n), catalan(n - 1)), lat.name)
    return oil_check(lat, I, J, family_params={"n": n})


# --------------------------------------------------------------------------- peaks


def is_admissible(S) -> bool:
    S = _normalize_set(S)
    return 1 not in S and not any(i + 1 in S for i in S)


def peak_count(S, n: int) -> int:
    """#P_n(S) by enumeration."""
    S = _normalize_set(S)
    if n <= 0:
        return 1 if n == 0 and not S else 0
    return int((peak_masks(all_permutations(n)) == _mask_of(S)).sum())


def peak_polynomial_value(S, n: int) -> tuple[int, int]:
    """(#P_n(S), p_n(S)) where #P_n(S) = p_n(S)·2^{n−#S−1}."""
    S = _normalize_set(S)
    if not is_admissible(S):
        raise NotAdmissible(f"{_set_str(S)} contains 1 or two consecutive integers")
    if n <= max(S, default=0) or n < 1:
        raise InputError(f"peak values need n > max S and n ≥ 1 (got n={n})")
    count = peak_count(S, n)
    q, r = divmod(count, 1 << (n - len(S) - 1))
    if r:
        raise DivisibilityFailed(f"#P_{n}({_set_str(S)}) = {count} is not divisible by "
                                 f"2^{n - len(S) - 1}")
    return count, q


# --------------------------------------------------------------------------- patterns


@dataclass(frozen=True)
class BivincularPattern:
    """``word`` is a permutation of 1..k. ``position_bars`` holds j when the
    copy must use adjacent positions for pattern positions j, j+1;
    ``value_marks`` holds v when the copies of values v, v+1 must be
    adjacent integers (the mark sits on v, the smaller one)."""

    word: tuple[int, ...]
    position_bars: frozenset = field(default_factory=frozenset)
    value_marks: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        w = tuple(int(v) for v in self.word)
        k = len(w)
        if sorted(w) != list(range(1, k + 1)):
            raise InvalidPattern(f"pattern word must be a permutation of 1..{k}: {w}")
        bars = frozenset(int(j) for j in self.position_bars)
        marks = frozenset(int(v) for v in self.value_marks)
        if any(not 1 <= j < k for j in bars):
            raise InvalidPattern(f"position bar outside the pattern: {sorted(bars)}")
        if any(not 1 <= v < k for v in marks):
            raise InvalidPattern(f"value mark needs a successor value in 1..{k}: {sorted(marks)}")
        object.__setattr__(self, "word", w)
        object.__setattr__(self, "position_bars", bars)
        object.__setattr__(self, "value_marks", marks)

    @property
    def size(self) -> int:
        return len(self.word)

    @property
    def is_classical(self) -> bool:
        return not self.position_bars and not self.value_marks

    def render(self, ascii: bool = False) -> str:
        mark = "-" if ascii else OVERLINE
        sep = "," if self.size > 9 else ""
        out = []
        for j, v in enumerate(self.word, start=1):
            out.append(str(v) + (mark if v in self.value_marks else ""))
            if j < self.size:
                out.append("|" if j in self.position_bars else sep)
        return "".join(out)

    def __str__(self) -> str:
        return self.render()

    def kernel_args(self):
        k = self.size
        pat = np.asarray([v - 1 for v in self.word], dtype=np.int8)
        pos = np.asarray([j in self.position_bars for j in range(1, k)], dtype=np.uint8)
        val = np.asarray([v in self.value_marks for v in range(1, k)], dtype=np.uint8)
        return pat, pos, val


def parse_pattern(text) -> BivincularPattern:
    """Parse a bivincular pattern.

    Grammar: values, optionally separated. A ``|`` between two values is a
    position bar. A value followed by ``-`` or a combining overline (U+0305)
    is value-marked. Without commas every digit is one value; with commas
    (needed past 9) values are the comma/bar separated tokens.
    Examples: ``"231"``, ``"2|31-"``, ``"2̄13"``, ``"10,2|1-,3,…"``.
    """
    if isinstance(text, BivincularPattern):
        return text
    if not isinstance(text, str):
        return BivincularPattern(tuple(text))
    s = text.strip()
    if not s:
        return BivincularPattern(())
    word: list[int] = []
    bars, marked = set(), set()
    multi = "," in s
    i, pending_bar = 0, False
    while i < len(s):
        ch = s[i]
        if ch == "|":
            if not word or pending_bar:
                raise InvalidPattern(f"misplaced bar in {text!r}")
            pending_bar = True
            i += 1
        elif ch == ",":
            i += 1
        elif ch.isdigit():
            j = i + 1
            if multi:
                while j < len(s) and s[j].isdigit():
                    j += 1
            word.append(int(s[i:j]))
            if pending_bar:
                bars.add(len(word) - 1)
                pending_bar = False
            i = j
            if i < len(s) and s[i] in ("-", OVERLINE):
                marked.add(word[-1])
                i += 1
        elif ch.isspace():
            i += 1
        else:
            raise InvalidPattern(f"unexpected {ch!r} in pattern {text!r}")
    if pending_bar:
        raise InvalidPattern(f"trailing bar in {text!r}")
    return BivincularPattern(tuple(word), frozenset(bars), frozenset(marked))


def pattern_copies(perm, pattern) -> list[tuple[int, ...]]:
    """All copies (as value tuples, left to right) of ``pattern`` in ``perm``."""
    from itertools import combinations

    w = as_permutation(perm).word
    pat = parse_pattern(pattern)
    k = pat.size
    out = []
    for pos in combinations(range(len(w)), k):
        if any(pos[j] != pos[j - 1] + 1 for j in pat.position_bars):
            continue
        vals = [w[p] for p in pos]
        if any((vals[a] < vals[b]) != (pat.word[a] < pat.word[b])
               for a in range(k) for b in range(a + 1, k)):
            continue
        where = {v: vals[t] for t, v in enumerate(pat.word)}
        if any(where[v + 1] - where[v] != 1 for v in pat.value_marks):
            continue
        out.append(tuple(vals))
    return out


def contains_pattern(perm, pattern) -> bool:
    p = as_permutation(perm)
    pat = parse_pattern(pattern)
    if pat.size > p.n:
        return False
    row = np.asarray([p.word], dtype=np.int8) - 1
    return bool(kernels.pattern_mask(row, *pat.kernel_args())[0])


def avoidance_count(pattern, n: int) -> int:
    """#Av_n(pattern) by brute force over 𝔖_n."""
    if n < 0:
        raise InputError("n must be nonnegative")
    pat = parse_pattern(pattern)
    config.enforce_param("avoidance length", n, config.PERM_CAP)
    if pat.size > 64:
        raise InvalidPattern("patterns longer than 64 are not supported")
    return int(kernels.count_avoiders(n, *pat.kernel_args()))


# --------------------------------------------------------------------------- experiments


@dataclass
class PinnacleReport:
    sigma: tuple[int, ...]
    n: int
    count: int
    is_lattice: bool
    is_distributive: bool
    reason: str = ""
    witness: object = None

    def to_dict(self) -> dict:
        return {"sigma": list(self.sigma), "n": self.n, "count": self.count,
                "is_lattice": self.is_lattice, "is_distributive": self.is_distributive,
                "reason": self.reason, "witness": self.witness}


def induced_poset(coords: np.ndarray, labels) -> Poset:
    """Componentwise order restricted to the given rows."""
    c = np.asarray(coords, dtype=np.int64)
    m = len(c)
    leq = np.ones((m, m), dtype=bool)
    for j in range(c.shape[1]):
        leq &= c[:, None, j] <= c[None, :, j]
    strict = leq & ~np.eye(m, dtype=bool)
    f = strict.astype(np.float32)
    two = (f @ f) > 0
    a, b = np.nonzero(strict & ~two)
    from .lattice import poset_from_covers
    return poset_from_covers(list(labels), list(zip(a.tolist(), b.tolist())))


def pinnacle_class(sigma: Sequence[int], n: int) -> np.ndarray:
    """0-based rows of Pin_n(σ): pinnacle values, left to right, equal σ."""
    sigma = tuple(int(v) for v in sigma)
    perms = all_permutations(n)
    mid = (perms[:, :-2] < perms[:, 1:-1]) & (perms[:, 1:-1] > perms[:, 2:]) if n >= 3 \
        else np.zeros((len(perms), 0), dtype=bool)
    counts = mid.sum(axis=1)
    keep = counts == len(sigma)
    if sigma and keep.any():
        rows = perms[keep]
        vals = np.where(mid[keep], rows[:, 1:-1] + 1, 0)
        # stable sort pushes zeros right while keeping pinnacle order
        order = np.argsort(vals == 0, axis=1, kind="stable")
        got = np.take_along_axis(vals, order, axis=1)[:, :len(sigma)]
        idx = np.flatnonzero(keep)[(got == np.asarray(sigma)).all(axis=1)]
        keep = np.zeros(len(perms), dtype=bool)
        keep[idx] = True
    return perms[keep]


def pinnacle_probe(sigma: Sequence[int], n: int) -> PinnacleReport:
    """Count Pin_n(σ) and test whether the induced middle order is a
    distributive lattice. A negative answer is a result, not an error."""
    sigma = tuple(int(v) for v in sigma)
    if len(set(sigma)) != len(sigma) or any(v < 1 for v in sigma):
        raise InputError(f"σ must consist of distinct positive integers, got {sigma}")
    rows = pinnacle_class(sigma, n)
    count = len(rows)
    if count == 0:
        return PinnacleReport(sigma, n, 0, False, False, "empty class")
    config.enforce("pinnacle class", count, config.DENSE_CAP)
    labels = [format_word((r + 1).tolist()) for r in rows]
    poset = induced_poset(iota_rows(rows), labels)
    try:
        lat = compute_lattice(poset, name=f"Pin_{n}({format_word(sigma) or '∅'})",
                              params={"sigma": list(sigma), "n": n})
    except NotALattice as exc:
        pair = tuple(labels[i] for i in exc.pair) if exc.pair else ()
        return PinnacleReport(sigma, n, count, False, False, exc.reason, pair)
    v = check_distributive(lat)
    witness = tuple(labels[i] for i in v.witness) if v.witness else None
    return PinnacleReport(sigma, n, count, True, v.holds,
                          "" if v.holds else "not distributive", witness)


# --------------------------------------------------------------------------- Stirling (first kind)


def stirling1_table(n_max: int, k_max: int) -> list[list[int]]:
    """c[n][k] for 0 ≤ n ≤ n_max, 0 ≤ k ≤ k_max."""
    c = [[0] * (k_max + 1) for _ in range(n_max + 1)]
    c[0][0] = 1
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            c[n][k] = c[n - 1][k - 1] + (n - 1) * c[n - 1][k]
    return c


def stirling1(n: int, k: int) -> int:
    if n < 0 or k < 0:
        return 0
    return stirling1_table(n, k)[n][k]


@dataclass
class ThresholdReport:
    k: int
    n_max: int
    values: list[int]
    verdicts: list[tuple[int, str]]
    threshold: int | None
    holds: bool
    violation: int | None = None

    def to_dict(self) -> dict:
        return {"k": self.k, "n_max": self.n_max, "threshold": self.threshold,
                "holds": self.holds, "violation": self.violation,
                "verdicts": [{"n": n, "verdict": v} for n, v in self.verdicts]}


def stirling1_threshold(k: int, n_max: int) -> ThresholdReport:
    """Scan (c(n,k))_{n≥0} for a single concave→convex crossover.

    Indices with a zero among c(n−1), c(n), c(n+1) are vacuous. ``threshold``
    is the first strictly convex index, or None when none occurs by n_max;
    ``violation`` is the first strictly concave index after it.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    if n_max < 1:
        raise InputError("n_max must be at least 1")
    col = [row[k] for row in stirling1_table(n_max + 1, k)]
    verdicts = []
    for n in range(1, n_max + 1):
        a, b, c = col[n - 1], col[n], col[n + 1]
        if 0 in (a, b, c):
            v = "vacuous"
        else:
            v = "both" if b * b == a * c else "concave" if b * b > a * c else "convex"
        verdicts.append((n, v))
    threshold = next((n for n, v in verdicts if v == "convex"), None)
    violation = None
    if threshold is not None:
        violation = next((n for n, v in verdicts if n > threshold and v == "concave"), None)
    return ThresholdReport(k, n_max, col[:n_max + 1], verdicts, threshold, violation is None,
                           violation)
