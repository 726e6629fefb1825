"""Set partitions as restricted growth functions (RGFs).

An RGF ρ ∈ RGF(n,k) splits into its first occurrences F(ρ) (positions of
the first 1, first 2, …) and the rest R(ρ); M(ρ) is R(ρ) as a multiset.
Both orders below become componentwise orders on integer vectors:
(−F, R) for RGF(n,k) and (−F, sorted M) for the noncrossing NC(n,k).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import config
from .errors import (
    CountMismatch,
    Infeasible,
    InputError,
    InternalInvariantViolated,
    InvalidRGF,
    NotStandardForm,
)
from .lattice import Certificate, VectorLattice, oil_check


def _format(values: Sequence[int], sep: str = ",") -> str:
    values = [int(v) for v in values]
    if all(v <= 9 for v in values):
        return "".join(map(str, values))
    return sep.join(map(str, values))


def _tokens(text: str) -> list[int]:
    text = text.strip()
    if "," in text:
        return [int(t) for t in text.split(",") if t.strip()]
    if not text.isdigit():
        raise InputError(f"cannot parse {text!r}")
    return [int(c) for c in text]


# --------------------------------------------------------------------------- types


@dataclass(frozen=True)
class RGF:
    word: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(v) for v in self.word)
        top = 0
        for i, v in enumerate(w, start=1):
            if v < 1 or v > top + 1:
                prefix = _format(w[:i - 1])
                raise InvalidRGF(f"ρ_{i}={v} but 1+max({prefix})={top + 1}" if i > 1
                                 else f"ρ_1 must be 1, got {v}")
            top = max(top, v)
        object.__setattr__(self, "word", w)

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def k(self) -> int:
        return max(self.word, default=0)

    def __str__(self) -> str:
        return _format(self.word)

    @classmethod
    def parse(cls, text: str) -> "RGF":
        return cls(tuple(_tokens(text)))


@dataclass(frozen=True)
class SetPartition:
    """Blocks in standard form: 1 = min B₁ < min B₂ < …"""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(x) for x in b)) for b in self.blocks)
        if any(not b for b in blocks):
            raise InputError("blocks must be nonempty")
        flat = sorted(x for b in blocks for x in b)
        if flat != list(range(1, len(flat) + 1)):
            raise InputError(f"blocks do not partition [1, {len(flat)}] disjointly")
        object.__setattr__(self, "blocks", tuple(sorted(blocks, key=lambda b: b[0])))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], strict: bool = False) -> "SetPartition":
        blocks = [tuple(sorted(int(x) for x in b)) for b in blocks]
        mins = [b[0] for b in blocks if b]
        if strict and mins != sorted(mins):
            raise NotStandardForm(f"block minima {mins} are not increasing")
        return cls(tuple(blocks))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        wide = self.n > 9
        return "/".join(",".join(map(str, b)) if wide else "".join(map(str, b)) for b in self.blocks)

    @classmethod
    def parse(cls, text: str, strict: bool = False) -> "SetPartition":
        """``"12359/46/78"``; blocks may be comma lists (``"1,10/2,3,…"``)."""
        return cls.from_blocks((_tokens(b) for b in text.strip().split("/")), strict=strict)


def as_rgf(x) -> RGF:
    if isinstance(x, RGF):
        return x
    if isinstance(x, str):
        return RGF.parse(x)
    return RGF(tuple(x))


def rgf_convert(x, strict: bool = False):
    """SetPartition → RGF and RGF → SetPartition.

    Strings containing ``/`` are read as partitions, other strings as RGFs.
    With ``strict`` a partition whose blocks are not in standard order raises
    NotStandardForm; otherwise it is normalized.
    """
    if isinstance(x, str) and "/" in x:
        x = SetPartition.parse(x, strict=strict)
    elif isinstance(x, (list, tuple)) and x and not isinstance(x[0], int):
        x = SetPartition.from_blocks(x, strict=strict)
    if isinstance(x, SetPartition):
        word = [0] * x.n
        for j, b in enumerate(x.blocks, start=1):
            for i in b:
                word[i - 1] = j
        return RGF(tuple(word))
    rho = as_rgf(x)
    blocks: dict[int, list[int]] = {}
    for i, v in enumerate(rho.word, start=1):
        blocks.setdefault(v, []).append(i)
    return SetPartition(tuple(tuple(blocks[v]) for v in sorted(blocks)))


# --------------------------------------------------------------------------- first/rest


def _as_multiset(M) -> tuple[int, ...]:
    """Weakly increasing tuple from a sequence, Counter or value→count map."""
    if isinstance(M, Mapping):
        items = []
        for v, c in M.items():
            if int(c) < 0:
                raise InputError(f"negative multiplicity for {v}")
            items.extend([int(v)] * int(c))
        return tuple(sorted(items))
    return tuple(sorted(int(v) for v in M))


@dataclass(frozen=True)
class FRDecomp:
    F: tuple[int, ...]
    R: tuple[int, ...]

    @property
    def M(self) -> tuple[int, ...]:
        return tuple(sorted(self.R))

    @property
    def k(self) -> int:
        return len(self.F)

    @property
    def n(self) -> int:
        return len(self.F) + len(self.R)

    def multiplicities(self) -> list[int]:
        """m_1..m_k."""
        c = Counter(self.R)
        return [c.get(i, 0) for i in range(1, self.k + 1)]


def decompose(rgf) -> FRDecomp:
    rho = as_rgf(rgf)
    seen, F, R = set(), [], []
    for i, v in enumerate(rho.word, start=1):
        if v in seen:
            R.append(v)
        else:
            seen.add(v)
            F.append(i)
    return FRDecomp(tuple(F), tuple(R))


def recompose(F: Sequence[int], R: Sequence[int]) -> tuple[int, ...]:
    """Place 1..k at the positions F and fill the rest with R in order."""
    n = len(F) + len(R)
    word = [0] * n
    for j, f in enumerate(F, start=1):
        if not 1 <= f <= n or word[f - 1]:
            raise InputError(f"bad first-occurrence positions {tuple(F)} for length {n}")
        word[f - 1] = j
    rest = iter(R)
    return tuple(v if v else next(rest) for v in word)


def compare_multisets(M, N) -> str | None:
    """``"<"``, ``"="``, ``">"`` or None (incomparable) after sorting both."""
    a, b = _as_multiset(M), _as_multiset(N)
    if len(a) != len(b):
        raise InputError("multisets of different sizes")
    le = all(x <= y for x, y in zip(a, b))
    ge = all(x >= y for x, y in zip(a, b))
    return "=" if le and ge else "<" if le else ">" if ge else None


def is_noncrossing(rgf) -> bool:
    """No subsequence i j i j with i ≠ j."""
    w = as_rgf(rgf).word
    k = max(w, default=0)
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i == j:
                continue
            state = 0  # greedy match of i j i j
            for x in w:
                if x == (i if state % 2 == 0 else j):
                    state += 1
                    if state == 4:
                        return False
    return True


def feasible_fm(F: Sequence[int], M) -> bool:
    """f_i − i ≤ m_1 + ⋯ + m_{i−1} for 1 < i ≤ k."""
    F = tuple(int(f) for f in F)
    if not F or F[0] != 1 or any(a >= b for a, b in zip(F, F[1:])):
        raise InputError(f"F must increase strictly from 1, got {F}")
    k = len(F)
    M = _as_multiset(M)
    if any(not 1 <= v <= k for v in M):
        raise InputError(f"M must be a multiset over [1, {k}]")
    c = Counter(M)
    below = 0
    for i in range(2, k + 1):
        below += c.get(i - 1, 0)
        if F[i - 1] - i > below:
            return False
    return True


def reconstruct_nc(F: Sequence[int], M) -> RGF:
    """The unique noncrossing RGF with first occurrences F and rest-multiset M."""
    F = tuple(int(f) for f in F)
    if not feasible_fm(F, M):
        raise Infeasible(f"no RGF has F={_format(F)} and M={_as_multiset(M)}")
    pool = Counter(_as_multiset(M))
    n = len(F) + sum(pool.values())
    word = [0] * (n + 1)
    for j, f in enumerate(F, start=1):
        word[f] = j
    nearest = 0
    for pos in range(1, n + 1):
        if word[pos]:
            nearest = word[pos]
            continue
        j = max((v for v, c in pool.items() if c and v <= nearest), default=None)
        if j is None:
            raise InternalInvariantViolated(f"reconstruction stuck at position {pos}")
        word[pos] = j
        pool[j] -= 1
    return RGF(tuple(word[1:]))


# --------------------------------------------------------------------------- enumeration


def _rgf_rows(n: int, k: int) -> np.ndarray:
    """All of RGF(n,k) as rows, lexicographic."""
    cap = config.max_elements()
    rows = np.ones((1, 1), dtype=np.int8)
    top = np.ones(1, dtype=np.int8)
    for i in range(1, n):
        blocks, tops = [], []
        for v in range(1, k + 1):
            ok = (v <= top + 1) & (np.maximum(top, v) + (n - i - 1) >= k)
            if ok.any():
                blocks.append(np.hstack([rows[ok], np.full((int(ok.sum()), 1), v, dtype=np.int8)]))
                tops.append(np.maximum(top[ok], v))
        rows, top = np.vstack(blocks), np.concatenate(tops)
        if len(rows) > cap:
            config.enforce("restricted growth functions", len(rows))
    rows = rows[top == k]
    return rows[np.lexsort([rows[:, j] for j in range(n - 1, -1, -1)])]


def noncrossing_mask(rows: np.ndarray) -> np.ndarray:
    """Vectorized ijij search, one automaton per ordered value pair."""
    rows = np.asarray(rows)
    k = int(rows.max()) if rows.size else 0
    pairs = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1) if i != j]
    if not pairs:
        return np.ones(len(rows), dtype=bool)
    I = np.asarray([p[0] for p in pairs], dtype=np.int8)
    J = np.asarray([p[1] for p in pairs], dtype=np.int8)
    state = np.zeros((len(rows), len(pairs)), dtype=np.int8)
    for p in range(rows.shape[1]):
        x = rows[:, p:p + 1]
        even = state % 2 == 0
        state += (even & (x == I)) | (~even & (x == J))
    return ~(state >= 4).any(axis=1)


def enumerate_rgfs(n: int, k: int, noncrossing: bool = False) -> list[RGF]:
    return [RGF(tuple(r)) for r in _rgf_table(n, k, noncrossing)[0].tolist()]


def _rgf_table(n: int, k: int, noncrossing: bool):
    if not 1 <= k <= n:
        raise InputError(f"need 1 ≤ k ≤ n, got n={n}, k={k}")
    rows = _rgf_rows(n, k)
    if noncrossing:
        rows = rows[noncrossing_mask(rows)]
    # first-occurrence positions and the rest, vectorized
    m = len(rows)
    first = np.zeros((m, k), dtype=np.int64)
    is_first = np.zeros(rows.shape, dtype=bool)
    top = np.zeros(m, dtype=np.int64)
    for p in range(n):
        new = rows[:, p] > top
        first[new, rows[new, p] - 1] = p + 1
        is_first[:, p] = new
        top = np.maximum(top, rows[:, p])
    rest = rows[~is_first].reshape(m, n - k).astype(np.int64)
    if noncrossing:
        rest = np.sort(rest, axis=1)
    return rows, first, rest


def rgf_lattice(n: int, k: int, noncrossing: bool = False) -> VectorLattice:
    """RGF(n,k) ordered by F ≥, R ≤ (or NC(n,k) by F ≥, M ≤).

    Elements are in lexicographic order of the words.
    """
    rows, first, rest = _rgf_table(n, k, noncrossing)
    coords = np.hstack([-first, rest])
    name = f"{'NC' if noncrossing else 'RGF'}({n},{k})"
    labels = [_format(r) for r in rows.tolist()]
    return VectorLattice(coords, labels, name=name,
                         params={"n": n, "k": k, "noncrossing": noncrossing})


def rgf_combine(rho, sigma, mode: str = "meet", noncrossing: bool = False) -> RGF:
    """Meet or join through the first/rest construction.

    Meet takes (max F, min R) (or min M) and join (min F, max R); the RGF is
    rebuilt by inserting first occurrences, or by noncrossing reconstruction.
    """
    if mode not in ("meet", "join"):
        raise InputError(f"mode must be 'meet' or 'join', got {mode!r}")
    a, b = decompose(rho), decompose(sigma)
    if (a.n, a.k) != (b.n, b.k):
        raise InputError("both RGFs must lie in the same RGF(n,k)")
    if noncrossing and not (is_noncrossing(rho) and is_noncrossing(sigma)):
        raise InputError("noncrossing combination needs noncrossing inputs")
    f_op, r_op = (max, min) if mode == "meet" else (min, max)
    F = tuple(f_op(x, y) for x, y in zip(a.F, b.F))
    if noncrossing:
        M = tuple(r_op(x, y) for x, y in zip(a.M, b.M))
        return reconstruct_nc(F, M)
    R = tuple(r_op(x, y) for x, y in zip(a.R, b.R))
    tau = RGF(recompose(F, R))
    if decompose(tau).F != F:
        raise InternalInvariantViolated(f"inserting firsts at {F} into {R} moved a first occurrence")
    return tau


# --------------------------------------------------------------------------- numbers


def stirling2(n: int, k: int) -> int:
    """S(n,k) by S(n,k) = S(n−1,k−1) + k·S(n−1,k)."""
    if n < 0 or k < 0:
        return 0
    row = [1] + [0] * k
    for m in range(1, n + 1):
        row = [0] + [row[j - 1] + j * row[j] for j in range(1, k + 1)]
    return row[k]


def narayana(n: int, k: int) -> int:
    """N(n,k) = (1/n)·C(n,k−1)·C(n,k); zero outside 1 ≤ k ≤ n."""
    if n < 1 or not 1 <= k <= n:
        return 1 if n == 0 and k == 0 else 0
    return comb(n, k - 1) * comb(n, k) // n


def _guard(got, want, where):
    if got != want:
        raise CountMismatch(f"{where}: ideal sizes {got}, expected {want}")


def _check_nk(n, k):
    if n < 2 or not 1 <= k <= n:
        raise InputError(f"need n ≥ 2 and 1 ≤ k ≤ n, got n={n}, k={k}")


def stirling2_certificate(n: int, k: int) -> Certificate:
    """Log-concavity of S(·,k) at n inside RGF(n+1,k).

    I = {ρ starting 11} (lower), J = {ρ ending in a non-first k} (upper).
    """
    _check_nk(n, k)
    rows, first, _ = _rgf_table(n + 1, k, False)
    lat = rgf_lattice(n + 1, k, False)
    I = lat.lower_ideal(rows[:, 1] == 1)
    J = lat.upper_ideal((rows[:, n] == k) & (first[:, k - 1] != n + 1))
    _guard((I.size, J.size, int((I.members & J.members).sum())),
           (stirling2(n, k), stirling2(n, k), stirling2(n - 1, k)), lat.name)
    return oil_check(lat, I, J, family_params={"n": n, "k": k})


def narayana_certificate(n: int, k: int) -> Certificate:
    """Log-concavity of N(·,k) at n inside NC(n+1,k).

    I = {f_2 ≥ 3} (lower), J = {m_k ≥ 1} (upper); vacuous conditions for k = 1.
    """
    _check_nk(n, k)
    rows, first, rest = _rgf_table(n + 1, k, True)
    lat = rgf_lattice(n + 1, k, True)
    I_mask = first[:, 1] >= 3 if k >= 2 else np.ones(lat.size, dtype=bool)
    J_mask = (rest == k).any(axis=1)
    I, J = lat.lower_ideal(I_mask), lat.upper_ideal(J_mask)
    _guard((I.size, J.size, int((I.members & J.members).sum())),
           (narayana(n, k), narayana(n, k), narayana(n - 1, k)), lat.name)
    if lat.size != narayana(n + 1, k):
        raise CountMismatch(f"#NC({n + 1},{k}) = {lat.size}, closed form {narayana(n + 1, k)}")
    return oil_check(lat, I, J, family_params={"n": n, "k": k})
