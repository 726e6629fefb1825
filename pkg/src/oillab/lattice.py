"""Finite posets, distributive lattices and the exact inequality verifiers.

Elements are dense integer indices carrying canonical string labels. Two
lattice representations share one interface:

* :class:`TableLattice` stores dense meet/join tables (built by
  :func:`compute_lattice` from an arbitrary poset);
* :class:`VectorLattice` stores integer vectors closed under componentwise
  min/max, so meet and join are computed on demand. Every family module
  builds one of these, which keeps lattices with 10^5+ elements cheap.
"""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import config, kernels
from .errors import (
    ClosureViolated,
    CycleDetected,
    DuplicateCover,
    InputError,
    NotALattice,
    NotAnIdeal,
    NotDistributive,
    NotModular,
    PreconditionFailed,
    SizeLimitExceeded,
)
from .qpoly import QPoly, qpoly_leq

LOWER, UPPER = "lower", "upper"
LEQ, GEQ = "<=", ">="


def _words(n: int) -> int:
    return max(1, (n + 63) // 64)


def _csr(n: int, src: np.ndarray, dst: np.ndarray):
    order = np.lexsort((dst, src))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return indptr, np.ascontiguousarray(dst[order], dtype=np.int64)


def _bits_to_bool(bits: np.ndarray, n: int) -> np.ndarray:
    return np.unpackbits(bits.view(np.uint8), axis=1, bitorder="little")[:, :n].astype(bool)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


# --------------------------------------------------------------------------- posets


class Poset:
    """Finite poset given by its cover relation.

    ``covers`` is an ``(m, 2)`` array of index pairs ``(a, b)`` with ``a ⋖ b``.
    Build instances with :func:`poset_from_covers`, which validates input;
    the constructor trusts its arguments.
    """

    def __init__(self, labels: Sequence[str] | Callable[[int], str], covers,
                 topo: np.ndarray | None = None, n: int | None = None):
        if callable(labels):
            if n is None:
                raise InputError("a label function needs an explicit size")
            self._label_fn, self.n = labels, n
        else:
            self.__dict__["labels"] = tuple(labels)
            self.n = len(self.labels)
        cov = np.asarray(covers, dtype=np.int64).reshape(-1, 2)
        self.covers = _readonly(np.ascontiguousarray(cov))
        if topo is not None:
            self.__dict__["topo"] = _readonly(np.asarray(topo, dtype=np.int64))

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={len(self.covers)})"

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(self._label_fn(i) for i in range(self.n))

    def label(self, i: int) -> str:
        if "labels" in self.__dict__:
            return self.labels[i]
        return self._label_fn(i)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown element {label!r}") from None

    @cached_property
    def lower_csr(self):
        """Lower covers of each element, as ``(indptr, indices)``."""
        return _csr(self.n, self.covers[:, 1], self.covers[:, 0])

    @cached_property
    def upper_csr(self):
        return _csr(self.n, self.covers[:, 0], self.covers[:, 1])

    @cached_property
    def topo(self) -> np.ndarray:
        """Linear extension; ties go to the smallest index."""
        order = _kahn(self.n, self.covers)
        if len(order) < self.n:
            raise CycleDetected(_find_cycle(self.n, self.covers, order))
        return _readonly(np.asarray(order, dtype=np.int64))

    @cached_property
    def down(self) -> np.ndarray:
        """Bitset rows: bit ``y`` of row ``x`` is set iff ``y ≤ x``."""
        if self.n > config.CLOSURE_CAP:
            raise SizeLimitExceeded("order relation bitsets", self.n, config.CLOSURE_CAP)
        indptr, indices = self.lower_csr
        return _readonly(kernels.down_closure(self.topo, indptr, indices, _words(self.n)))

    @cached_property
    def up(self) -> np.ndarray:
        if self.n > config.CLOSURE_CAP:
            raise SizeLimitExceeded("order relation bitsets", self.n, config.CLOSURE_CAP)
        indptr, indices = self.upper_csr
        topo = np.ascontiguousarray(self.topo[::-1])
        return _readonly(kernels.down_closure(topo, indptr, indices, _words(self.n)))

    def leq(self, x: int, y: int) -> bool:
        if self.n <= config.CLOSURE_CAP:
            return bool((int(self.down[y, x >> 6]) >> (x & 63)) & 1)
        indptr, indices = self.lower_csr
        seen, stack = {y}, [y]
        while stack:
            z = stack.pop()
            if z == x:
                return True
            for w in indices[indptr[z]:indptr[z + 1]].tolist():
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    @cached_property
    def ranks(self) -> np.ndarray:
        """Length of the longest chain from a minimal element."""
        indptr, indices = self.lower_csr
        rank = np.zeros(self.n, dtype=np.int64)
        ip, ix = indptr.tolist(), indices.tolist()
        r = rank.tolist()
        for x in self.topo.tolist():
            lo, hi = ip[x], ip[x + 1]
            if hi > lo:
                r[x] = 1 + max(r[w] for w in ix[lo:hi])
        return _readonly(np.asarray(r, dtype=np.int64))

    @cached_property
    def lower_cover_counts(self) -> np.ndarray:
        return _readonly(np.bincount(self.covers[:, 1], minlength=self.n))

    @cached_property
    def upper_cover_counts(self) -> np.ndarray:
        return _readonly(np.bincount(self.covers[:, 0], minlength=self.n))

    def minimal(self) -> list[int]:
        return np.flatnonzero(self.lower_cover_counts == 0).tolist()

    def maximal(self) -> list[int]:
        return np.flatnonzero(self.upper_cover_counts == 0).tolist()


def _kahn(n: int, covers: np.ndarray) -> list[int]:
    indeg = np.bincount(covers[:, 1], minlength=n).tolist()
    indptr, indices = _csr(n, covers[:, 0], covers[:, 1])
    ip, ix = indptr.tolist(), indices.tolist()
    heap = [x for x in range(n) if indeg[x] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        x = heapq.heappop(heap)
        order.append(x)
        for y in ix[ip[x]:ip[x + 1]]:
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(heap, y)
    return order


def _find_cycle(n: int, covers: np.ndarray, done: list[int]) -> list[int]:
    alive = np.ones(n, dtype=bool)
    alive[done] = False
    pred: dict[int, int] = {}
    for a, b in covers.tolist():
        if alive[a] and alive[b] and b not in pred:
            pred[b] = a
    x = int(np.flatnonzero(alive)[0])
    path, pos = [], {}
    while x not in pos:
        pos[x] = len(path)
        path.append(x)
        x = pred[x]
    cycle = path[pos[x]:][::-1]
    return cycle + [cycle[0]]


def poset_from_covers(labels: Sequence[str], covers: Iterable) -> Poset:
    """Validate a cover relation and build its poset.

    Cover pairs may name elements by index or by label. Transitive
    shortcuts (a ⋖ c listed alongside a ⋖ b ⋖ c) are dropped.
    """
    labels = [str(s) for s in labels]
    n = len(labels)
    if len(set(labels)) != n:
        raise InputError("element labels must be distinct")
    lookup = {lab: i for i, lab in enumerate(labels)}

    def resolve(v):
        if isinstance(v, str):
            if v not in lookup:
                raise InputError(f"unknown element {v!r}")
            return lookup[v]
        v = int(v)
        if not 0 <= v < n:
            raise InputError(f"element index {v} out of range 0..{n - 1}")
        return v

    pairs, seen = [], set()
    for item in covers:
        a, b = item
        a, b = resolve(a), resolve(b)
        if a == b:
            raise CycleDetected([a, a])
        if (a, b) in seen:
            raise DuplicateCover((a, b))
        seen.add((a, b))
        pairs.append((a, b))
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    draft = Poset(labels, arr)
    _ = draft.topo  # raises on cycles
    if n > config.CLOSURE_CAP:
        raise SizeLimitExceeded("poset_from_covers", n, config.CLOSURE_CAP)
    down = draft.down
    indptr, indices = draft.lower_csr
    keep = []
    for b in range(n):
        lows = indices[indptr[b]:indptr[b + 1]].tolist()
        for a in lows:
            word, bit = a >> 6, np.uint64(1) << np.uint64(a & 63)
            if not any(c != a and down[c, word] & bit for c in lows):
                keep.append((a, b))
    keep.sort()
    return Poset(labels, np.asarray(keep, dtype=np.int64).reshape(-1, 2), topo=draft.topo)


# --------------------------------------------------------------------------- verdicts


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check. ``method`` says how exhaustive it was."""

    holds: bool
    witness: tuple | None = None
    method: str = "exhaustive"
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


# --------------------------------------------------------------------------- lattices


class Lattice:
    """Common interface; see :class:`TableLattice` and :class:`VectorLattice`."""

    name: str
    params: dict

    def __init__(self, name: str = "", params: Mapping | None = None):
        self.name = name or type(self).__name__
        self.params = dict(params or {})
        self._verdicts: dict[str, Verdict] = {}

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r}, size={self.size})"

    # subclasses provide: size, labels, poset, meet_many, join_many, leq

    @property
    def covers(self) -> np.ndarray:
        return self.poset.covers

    def index(self, label: str) -> int:
        return self.poset.index(label)

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_many(np.array([x]), np.array([y]))[0])

    def join(self, x: int, y: int) -> int:
        return int(self.join_many(np.array([x]), np.array([y]))[0])

    @cached_property
    def bottom(self) -> int:
        mins = self.poset.minimal()
        if len(mins) != 1:
            raise NotALattice(tuple(mins[:2]), "no least element")
        return mins[0]

    @cached_property
    def top(self) -> int:
        maxs = self.poset.maximal()
        if len(maxs) != 1:
            raise NotALattice(tuple(maxs[:2]), "no greatest element")
        return maxs[0]

    def _dense_guard(self, what: str) -> None:
        if self.size > config.DENSE_CAP:
            raise SizeLimitExceeded(what, self.size, config.DENSE_CAP)

    @property
    def meet_table(self) -> np.ndarray:
        raise NotImplementedError

    @property
    def join_table(self) -> np.ndarray:
        raise NotImplementedError

    def mask(self, subset) -> np.ndarray:
        """Boolean membership array for a subset given in any accepted form."""
        if isinstance(subset, IdealHandle):
            return subset.members
        if isinstance(subset, np.ndarray) and subset.dtype == bool:
            if subset.shape != (self.size,):
                raise InputError("membership mask has the wrong length")
            return subset
        m = np.zeros(self.size, dtype=bool)
        for v in subset:
            if isinstance(v, str):
                v = self.index(v)
            v = int(v)
            if not 0 <= v < self.size:
                raise InputError(f"element index {v} out of range")
            m[v] = True
        return m

    def ideal(self, subset, kind: str) -> "IdealHandle":
        """Wrap ``subset`` as an ideal of the given kind, checking closure."""
        handle = IdealHandle(kind, self.mask(subset))
        _verify_ideal(self, handle, "ideal")
        return handle

    def lower_ideal(self, subset) -> "IdealHandle":
        return self.ideal(subset, LOWER)

    def upper_ideal(self, subset) -> "IdealHandle":
        return self.ideal(subset, UPPER)

    def principal(self, x: int, kind: str = LOWER) -> "IdealHandle":
        """The principal ideal ↓x (or ↑x)."""
        closure = self.poset.down if kind == LOWER else self.poset.up
        return IdealHandle(kind, _bits_to_bool(closure[x:x + 1], self.size)[0].copy())

    def whole(self, kind: str = LOWER) -> "IdealHandle":
        return IdealHandle(kind, np.ones(self.size, dtype=bool))


class TableLattice(Lattice):
    """Lattice with dense meet/join tables over a :class:`Poset`."""

    def __init__(self, poset: Poset, meet: np.ndarray, join: np.ndarray,
                 name: str = "", params: Mapping | None = None):
        super().__init__(name, params)
        self.poset = poset
        self._meet = _readonly(np.ascontiguousarray(meet, dtype=np.int32))
        self._join = _readonly(np.ascontiguousarray(join, dtype=np.int32))

    @property
    def size(self) -> int:
        return self.poset.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.poset.labels

    @property
    def meet_table(self) -> np.ndarray:
        return self._meet

    @property
    def join_table(self) -> np.ndarray:
        return self._join

    def meet_many(self, xs, ys) -> np.ndarray:
        return self._meet[np.asarray(xs), np.asarray(ys)]

    def join_many(self, xs, ys) -> np.ndarray:
        return self._join[np.asarray(xs), np.asarray(ys)]

    def leq(self, x: int, y: int) -> bool:
        return int(self._meet[x, y]) == x


class _RowCodec:
    """Exact lookup of integer row vectors among a fixed set of rows."""

    def __init__(self, rows: np.ndarray):
        self.rows = rows
        n, m = rows.shape
        self.lo = rows.min(axis=0) if n else np.zeros(m, dtype=np.int64)
        self.hi = rows.max(axis=0) if n else np.zeros(m, dtype=np.int64)
        radix = (self.hi - self.lo + 1).tolist()
        total = 1
        for r in radix:
            total *= r
        self.mixed = total < (1 << 62)
        if self.mixed:
            w, acc = [], 1
            for r in reversed(radix):
                w.append(acc)
                acc *= r
            self.weights = np.asarray(w[::-1], dtype=np.int64)
            keys = (rows - self.lo) @ self.weights
        else:
            self.weights = None
            keys = self._void(rows)
        self.order = np.argsort(keys, kind="stable")
        self.sorted = keys[self.order]
        if n > 1 and (self.sorted[1:] == self.sorted[:-1]).any():
            raise InputError("duplicate element vectors")

    @staticmethod
    def _void(rows: np.ndarray) -> np.ndarray:
        rows = np.ascontiguousarray(rows, dtype=np.int64)
        return rows.view(np.dtype((np.void, 8 * max(rows.shape[1], 1)))).ravel() \
            if rows.shape[1] else np.zeros(len(rows), dtype=np.dtype((np.void, 8)))

    def keys(self, q: np.ndarray):
        if self.mixed:
            return (q - self.lo) @ self.weights
        return self._void(q)

    def find(self, q: np.ndarray) -> np.ndarray:
        q = np.asarray(q, dtype=np.int64)
        if q.ndim != 2:
            q = q.reshape(-1, self.rows.shape[1])
        if len(self.sorted) == 0:
            return np.full(len(q), -1, dtype=np.int64)
        inside = ((q >= self.lo) & (q <= self.hi)).all(axis=1)
        k = self.keys(np.where(inside[:, None], q, self.lo))
        pos = np.minimum(np.searchsorted(self.sorted, k), len(self.sorted) - 1)
        hit = inside & (self.sorted[pos] == k)
        return np.where(hit, self.order[pos], -1)

    def group_ids(self, drop: int) -> np.ndarray:
        """Ids equal exactly for rows that agree outside column ``drop``."""
        if self.mixed:
            return (self.rows - self.lo) @ self.weights - (self.rows[:, drop] - self.lo[drop]) * self.weights[drop]
        others = np.delete(self.rows, drop, axis=1)
        return np.unique(others, axis=0, return_inverse=True)[1].ravel()


class VectorLattice(Lattice):
    """Finite set of integer vectors closed under componentwise min and max.

    The order is componentwise, meet is ``min`` and join is ``max``. Index
    order is the caller's; it should be the family's canonical order.
    Covers are the pairs that differ in one coordinate with no element
    strictly between them on that coordinate line. That is always a subset
    of the Hasse diagram; it is the whole diagram for every family built in
    this package (tests compare against the generic construction).
    """

    def __init__(self, coords, labels: Sequence[str] | Callable[[int], str], *,
                 name: str = "", params: Mapping | None = None):
        super().__init__(name, params)
        c = np.asarray(coords, dtype=np.int64)
        if c.ndim == 1:
            c = c.reshape(-1, 1)
        if len(c) == 0:
            raise InputError("a lattice needs at least one element")
        self.coords = _readonly(np.ascontiguousarray(c))
        varying = (c != c[0]).any(axis=0)
        self._var = np.ascontiguousarray(c[:, varying])
        self._codec = _RowCodec(self._var)
        self._label_src = labels
        if not callable(labels) and len(labels) != len(c):
            raise InputError("labels and coordinates differ in length")

    @property
    def size(self) -> int:
        return len(self.coords)

    @cached_property
    def labels(self) -> tuple[str, ...]:
        if callable(self._label_src):
            return tuple(self._label_src(i) for i in range(self.size))
        return tuple(self._label_src)

    def label(self, i: int) -> str:
        if callable(self._label_src) and "labels" not in self.__dict__:
            return self._label_src(i)
        return self.labels[i]

    def find(self, vectors) -> np.ndarray:
        """Indices of the given full-length vectors (-1 where absent)."""
        q = np.asarray(vectors, dtype=np.int64).reshape(-1, self.coords.shape[1])
        same = (q[:, ~self._varying_mask()] == self.coords[0, ~self._varying_mask()]).all(axis=1)
        idx = self._codec.find(q[:, self._varying_mask()])
        return np.where(same, idx, -1)

    def _varying_mask(self) -> np.ndarray:
        return (self.coords != self.coords[0]).any(axis=0)

    def _combine(self, xs, ys, op) -> np.ndarray:
        xs, ys = np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64)
        idx = self._codec.find(op(self._var[xs], self._var[ys]))
        if (idx < 0).any():
            k = int(np.argmax(idx < 0))
            raise ClosureViolated(f"{self.name}: {op.__name__} of elements {int(xs.flat[k])}, "
                                  f"{int(ys.flat[k])} is not in the set")
        return idx.reshape(np.broadcast(xs, ys).shape)

    def meet_many(self, xs, ys) -> np.ndarray:
        return self._combine(xs, ys, np.minimum)

    def join_many(self, xs, ys) -> np.ndarray:
        return self._combine(xs, ys, np.maximum)

    def leq(self, x: int, y: int) -> bool:
        return bool((self._var[x] <= self._var[y]).all())

    @cached_property
    def _tables(self):
        self._dense_guard("dense meet/join tables")
        codec = self._codec
        if codec.mixed:
            meet, join = kernels.minmax_tables(
                np.ascontiguousarray(self._var - codec.lo), codec.weights,
                np.ascontiguousarray(codec.sorted), np.ascontiguousarray(codec.order))
        else:
            ar = np.arange(self.size)
            meet = np.stack([self.meet_many(np.full(self.size, x), ar) for x in range(self.size)])
            join = np.stack([self.join_many(np.full(self.size, x), ar) for x in range(self.size)])
        for table, what in ((meet, "meet"), (join, "join")):
            if (table < 0).any():
                x, y = divmod(int(np.argmax(table.ravel() < 0)), self.size)
                raise ClosureViolated(f"{self.name}: {what} of elements {x}, {y} is not in the set")
        return _readonly(meet.astype(np.int32)), _readonly(join.astype(np.int32))

    @property
    def meet_table(self) -> np.ndarray:
        return self._tables[0]

    @property
    def join_table(self) -> np.ndarray:
        return self._tables[1]

    @cached_property
    def poset(self) -> Poset:
        lows, highs = [], []
        for i in range(self._var.shape[1]):
            gid = self._codec.group_ids(i)
            order = np.lexsort((self._var[:, i], gid))
            g = gid[order]
            same = g[1:] == g[:-1]
            lows.append(order[:-1][same])
            highs.append(order[1:][same])
        if lows:
            a, b = np.concatenate(lows), np.concatenate(highs)
            srt = np.lexsort((b, a))
            covers = np.stack([a[srt], b[srt]], axis=1)
        else:
            covers = np.zeros((0, 2), dtype=np.int64)
        topo = np.argsort(self._var.sum(axis=1), kind="stable")
        return Poset(self.label, covers, topo=topo, n=self.size)


def compute_lattice(poset: Poset, name: str = "", params: Mapping | None = None) -> TableLattice:
    """Dense meet/join tables for ``poset``, or :class:`NotALattice`.

    Joins are resolved before meets, so a pair lacking both bounds is
    reported as lacking an upper bound.
    """
    n = poset.n
    if n == 0:
        raise NotALattice((), "empty ground set")
    if n > config.DENSE_CAP:
        raise SizeLimitExceeded("dense meet/join tables", n, config.DENSE_CAP)
    topo = poset.topo
    pos = np.empty(n, dtype=np.int64)
    pos[topo] = np.arange(n)
    cov = poset.covers
    w = _words(n)

    def tables(src_rank, lower_col, upper_col, reasons):
        # relabel so index order is a linear extension of the (possibly dual) order
        a, b = src_rank[cov[:, lower_col]], src_rank[cov[:, upper_col]]
        indptr, indices = _csr(n, b, a)
        down = kernels.down_closure(np.arange(n, dtype=np.int64), indptr, indices, w)
        table, code, x, y = kernels.glb_table(down)
        inverse = np.empty(n, dtype=np.int64)
        inverse[src_rank] = np.arange(n)
        if code:
            pair = tuple(sorted((int(inverse[x]), int(inverse[y]))))
            raise NotALattice(pair, reasons[code - 1])
        return inverse[table[np.ix_(src_rank, src_rank)]]

    join = tables(n - 1 - pos, 1, 0, ("no upper bound", "no least upper bound"))
    meet = tables(pos, 0, 1, ("no lower bound", "no greatest lower bound"))
    return TableLattice(poset, meet, join, name=name, params=params)


# --------------------------------------------------------------------------- ideals


@dataclass(frozen=True, eq=False)
class IdealHandle:
    """A lower or upper ideal, stored as a boolean membership array."""

    kind: str
    members: np.ndarray

    def __post_init__(self):
        if self.kind not in (LOWER, UPPER):
            raise InputError(f"ideal kind must be 'lower' or 'upper', not {self.kind!r}")
        m = np.array(self.members, dtype=bool)
        m.setflags(write=False)
        object.__setattr__(self, "members", m)

    @property
    def size(self) -> int:
        return int(self.members.sum())

    def indices(self) -> list[int]:
        return np.flatnonzero(self.members).tolist()

    def __contains__(self, x: int) -> bool:
        return bool(self.members[x])

    def __len__(self) -> int:
        return self.size

    def __and__(self, other: "IdealHandle") -> np.ndarray:
        return self.members & other.members


def _closure_witness(lattice: Lattice, mask: np.ndarray, kind: str):
    cov = lattice.covers
    a, b = cov[:, 0], cov[:, 1]
    bad = (mask[b] & ~mask[a]) if kind == LOWER else (mask[a] & ~mask[b])
    if bad.any():
        k = int(np.argmax(bad))
        return (int(a[k]), int(b[k]))
    return None


def _verify_ideal(lattice: Lattice, handle: IdealHandle, which: str) -> None:
    if handle.members.shape != (lattice.size,):
        raise InputError(f"ideal {which} has the wrong length")
    witness = _closure_witness(lattice, handle.members, handle.kind)
    if witness is not None:
        raise NotAnIdeal(which, witness)


def classify_ideal(lattice: Lattice, subset) -> str:
    """``lower``, ``upper``, ``both`` (only ∅ and L) or ``neither``."""
    m = lattice.mask(subset)
    low = _closure_witness(lattice, m, LOWER) is None
    up = _closure_witness(lattice, m, UPPER) is None
    if low and up:
        return "both"
    return LOWER if low else UPPER if up else "neither"


# --------------------------------------------------------------------------- structural checks


def _distributive_sampled(lattice: Lattice, samples: int, seed: int) -> Verdict:
    rng = np.random.default_rng(seed)
    x, y, z = rng.integers(0, lattice.size, size=(3, samples))
    lhs = lattice.meet_many(x, lattice.join_many(y, z))
    rhs = lattice.join_many(lattice.meet_many(x, y), lattice.meet_many(x, z))
    bad = lhs != rhs
    if bad.any():
        k = int(np.argmax(bad))
        return Verdict(False, (int(x[k]), int(y[k]), int(z[k])), "sampled")
    return Verdict(True, None, "sampled", f"{samples} random triples")


def check_distributive(lattice: Lattice, *, samples: int | None = None, seed: int = 0) -> Verdict:
    """Check x∧(y∨z) = (x∧y)∨(x∧z).

    Up to ``TRIPLE_CAP`` elements every triple is tested. Up to ``DENSE_CAP``
    the equivalent join-prime criterion is used instead: a finite lattice is
    distributive iff every join-irreducible j with j ≤ x∨y has j ≤ x or
    j ≤ y; a failure (j, x, y) is itself a failing triple. Larger lattices
    get random triples and a verdict labeled ``sampled``.
    """
    key = f"distributive:{samples}:{seed}"
    if key in lattice._verdicts:
        return lattice._verdicts[key]
    n = lattice.size
    if n <= config.TRIPLE_CAP:
        w = kernels.first_bad_triple(lattice.meet_table, lattice.join_table)
        verdict = Verdict(w is None, w, "exhaustive")
    elif n <= config.DENSE_CAP:
        ji = lattice.poset.lower_cover_counts == 1
        bits = np.packbits(np.pad(ji, (0, _words(n) * 64 - n)), bitorder="little").view(np.uint64)
        w = kernels.first_join_prime_failure(lattice.join_table, lattice.poset.down,
                                             np.ascontiguousarray(bits))
        verdict = Verdict(w is None, w, "join-prime")
    else:
        verdict = _distributive_sampled(lattice, samples or config.SAMPLE_TRIPLES, seed)
    lattice._verdicts[key] = verdict
    return verdict


def check_lattice_axioms(lattice: Lattice) -> Verdict:
    """Idempotence, commutativity, absorption, consistency with the cover
    order, greatest/least bound property and (up to ``ASSOC_CAP``)
    associativity, all exhaustively. Witness is ``(law, x, y[, z])``."""
    n = lattice.size
    lattice._dense_guard("lattice axiom suite")
    M, J = lattice.meet_table, lattice.join_table
    ar = np.arange(n)
    for T, op in ((M, "meet"), (J, "join")):
        if T.shape != (n, n) or (T < 0).any() or (T >= n).any():
            return Verdict(False, (f"{op} table range",))
        bad = np.flatnonzero(np.diag(T) != ar)
        if len(bad):
            return Verdict(False, (f"{op} idempotence", int(bad[0])))
        bad = T != T.T
        if bad.any():
            return Verdict(False, (f"{op} commutativity", *divmod(int(np.argmax(bad)), n)))
    for T, U, law in ((M, J, "absorption x∧(x∨y)=x"), (J, M, "absorption x∨(x∧y)=x")):
        bad = T[ar[:, None], U] != ar[:, None]
        if bad.any():
            return Verdict(False, (law, *divmod(int(np.argmax(bad)), n)))
    down = lattice.poset.down
    below = _bits_to_bool(down, n)  # below[x, y] iff y ≤ x in the cover order
    bad = (M == ar[None, :]) != below
    if bad.any():
        return Verdict(False, ("order consistency", *divmod(int(np.argmax(bad)), n)))
    w = kernels.first_bound_mismatch(M, down)
    if w is not None:
        return Verdict(False, ("greatest lower bound", *w))
    w = kernels.first_bound_mismatch(J, lattice.poset.up)
    if w is not None:
        return Verdict(False, ("least upper bound", *w))
    if n <= config.ASSOC_CAP:
        for T, op in ((M, "meet"), (J, "join")):
            w = kernels.first_nonassociative(T)
            if w is not None:
                return Verdict(False, (f"{op} associativity", *w))
        return Verdict(True, None, "exhaustive")
    return Verdict(True, None, "bounds", "associativity follows from the bound checks")


def _ensure_distributive(lattice: Lattice, assume: bool) -> str:
    if assume:
        return "assumed"
    v = check_distributive(lattice)
    if not v.holds:
        raise NotDistributive(v.witness)
    return v.method


# --------------------------------------------------------------------------- certificates


def _jsonify(v):
    if isinstance(v, QPoly):
        return v.to_list()
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, dict):
        return {str(k): _jsonify(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonify(x) for x in v]
    return v


@dataclass(frozen=True)
class Certificate:
    """A verified inequality ``A·B <direction> C·D``.

    ``mode`` is ``count`` (Order Ideal Lemma, integers), ``fkg`` (weighted
    sums, rationals) or ``q`` (polynomials compared coefficientwise). In fkg
    mode the four quantities are S(f), S(g), S(fg), S(1) and the kinds are
    the monotonicity directions of f and g.
    """

    lattice: str
    kind_I: str
    kind_J: str
    size_I: object
    size_J: object
    intersection_size: object
    lattice_size: object
    direction: str
    holds: bool
    mode: str = "count"
    method: str = "exhaustive"
    family_params: dict = field(default_factory=dict)

    @property
    def lhs(self):
        return self.size_I * self.size_J

    @property
    def rhs(self):
        return self.intersection_size * self.lattice_size

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "violated"

    @property
    def witness(self):
        if self.holds:
            return None
        if self.mode == "q":
            diff = (self.rhs - self.lhs) if self.direction == LEQ else (self.lhs - self.rhs)
            i = next(k for k, a in enumerate(diff.coeffs) if a < 0)
            return {"coefficient": i, "lhs": self.lhs.coeff(i), "rhs": self.rhs.coeff(i)}
        return {"lhs": self.lhs, "rhs": self.rhs}

    def specialize(self, q=1) -> "Certificate":
        """Evaluate a q-certificate at ``q``; at q=1 this is the count certificate."""
        if self.mode != "q":
            raise InputError("only q-certificates can be specialized")
        vals = [p(q) for p in (self.size_I, self.size_J, self.intersection_size, self.lattice_size)]
        lhs, rhs = vals[0] * vals[1], vals[2] * vals[3]
        return Certificate(self.lattice, self.kind_I, self.kind_J, *vals, self.direction,
                           lhs <= rhs if self.direction == LEQ else lhs >= rhs,
                           "count", self.method, dict(self.family_params))

    def to_dict(self) -> dict:
        out = {
            "lattice": self.lattice,
            "family_params": _jsonify(self.family_params),
            "ideal_I": {"kind": self.kind_I, "size": _jsonify(self.size_I)},
            "ideal_J": {"kind": self.kind_J, "size": _jsonify(self.size_J)},
            "intersection_size": _jsonify(self.intersection_size),
            "lattice_size": _jsonify(self.lattice_size),
            "direction": self.direction,
            "verdict": self.verdict,
            "mode": self.mode,
            "lhs": _jsonify(self.lhs),
            "rhs": _jsonify(self.rhs),
            "distributivity": self.method,
        }
        if not self.holds:
            out["witness"] = _jsonify(self.witness)
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _direction(kind_a: str, kind_b: str) -> str:
    return LEQ if kind_a == kind_b else GEQ


def oil_check(lattice: Lattice, I: IdealHandle, J: IdealHandle, *,
              assume_distributive: bool = False, family_params: Mapping | None = None) -> Certificate:
    """|I|·|J| ≤ |I∩J|·|L| for ideals of the same kind, ≥ for mixed kinds."""
    _verify_ideal(lattice, I, "I")
    _verify_ideal(lattice, J, "J")
    method = _ensure_distributive(lattice, assume_distributive)
    a, b = I.size, J.size
    c, d = int((I.members & J.members).sum()), lattice.size
    direction = _direction(I.kind, J.kind)
    holds = a * b <= c * d if direction == LEQ else a * b >= c * d
    params = lattice.params if family_params is None else family_params
    return Certificate(lattice.name, I.kind, J.kind, a, b, c, d, direction, holds,
                       "count", method, dict(params))


# --------------------------------------------------------------------------- weighted checks


def _values(lattice: Lattice, fn, name: str, integral: bool = False) -> list:
    n = lattice.size
    if callable(fn):
        vals = [fn(i) for i in range(n)]
    elif isinstance(fn, Mapping):
        missing = [i for i in range(n) if i not in fn]
        if missing:
            raise InputError(f"{name} is not total: no value at element {missing[0]}")
        vals = [fn[i] for i in range(n)]
    else:
        vals = list(fn.tolist() if isinstance(fn, np.ndarray) else fn)
        if len(vals) != n:
            raise InputError(f"{name} has {len(vals)} values for {n} elements")
    out = []
    for i, v in enumerate(vals):
        if isinstance(v, bool):
            v = int(v)
        if isinstance(v, str):
            v = Fraction(v)
        if integral:
            if not isinstance(v, (int, np.integer)) and not (isinstance(v, Fraction) and v.denominator == 1):
                raise InputError(f"{name}({i}) = {v!r} is not an integer")
            v = int(v)
        else:
            if not isinstance(v, (Rational, np.integer)):
                raise InputError(f"{name}({i}) = {v!r} is not an exact rational")
            v = Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v)
        if v < 0:
            raise InputError(f"{name}({i}) = {v} is negative")
        out.append(v)
    return out


def check_log_supermodular(lattice: Lattice, mu) -> Verdict:
    """μ(x)μ(y) ≤ μ(x∧y)μ(x∨y) for every pair; witness is the first bad pair."""
    lattice._dense_guard("log-supermodularity check")
    m = _values(lattice, mu, "mu")
    M, J = lattice.meet_table.tolist(), lattice.join_table.tolist()
    for x in range(lattice.size):
        Mx, Jx, mx = M[x], J[x], m[x]
        for y in range(x + 1, lattice.size):
            if mx * m[y] > m[Mx[y]] * m[Jx[y]]:
                return Verdict(False, (x, y))
    return Verdict(True)


def check_monotone(poset, f, direction: str) -> Verdict:
    """Monotonicity of ``f`` in the given direction.

    Testing each cover a ⋖ b suffices because ≤ is their transitive
    closure; the witness is a failing cover pair.
    """
    if direction not in ("increasing", "decreasing"):
        raise InputError("direction must be 'increasing' or 'decreasing'")
    holder = poset if isinstance(poset, Lattice) else _PosetView(poset)
    vals = _values(holder, f, "f")
    for a, b in holder.covers.tolist():
        if (vals[a] > vals[b]) if direction == "increasing" else (vals[a] < vals[b]):
            return Verdict(False, (a, b))
    return Verdict(True)


class _PosetView:
    def __init__(self, poset: Poset):
        self.size, self.covers = poset.n, poset.covers


def monotone_direction(lattice: Lattice, f) -> str | None:
    """``constant``, ``increasing``, ``decreasing`` or None."""
    inc = check_monotone(lattice, f, "increasing").holds
    dec = check_monotone(lattice, f, "decreasing").holds
    if inc and dec:
        return "constant"
    return "increasing" if inc else "decreasing" if dec else None


def fkg_check(lattice: Lattice, mu, f, g, *, assume_distributive: bool = False,
              family_params: Mapping | None = None) -> Certificate:
    """S(f)·S(g) vs S(fg)·S(1) with S(h) = Σ μ(x)h(x).

    ≤ when f and g are monotone the same way, ≥ when they are opposite.
    Every precondition is re-verified and reported as PreconditionFailed.
    """
    if not assume_distributive:
        v = check_distributive(lattice)
        if not v.holds:
            raise PreconditionFailed("distributive", v.witness)
        method = v.method
    else:
        method = "assumed"
    m = _values(lattice, mu, "mu")
    fv, gv = _values(lattice, f, "f"), _values(lattice, g, "g")
    v = check_log_supermodular(lattice, m)
    if not v.holds:
        raise PreconditionFailed("mu log-supermodular", v.witness)
    dirs = []
    for name, vals in (("f", fv), ("g", gv)):
        d = monotone_direction(lattice, vals)
        if d is None:
            raise PreconditionFailed(f"{name} monotone", (
                check_monotone(lattice, vals, "increasing").witness,
                check_monotone(lattice, vals, "decreasing").witness))
        dirs.append(d)
    if "constant" in dirs or dirs[0] == dirs[1]:
        direction = LEQ
    else:
        direction = GEQ
    Sf = sum(a * b for a, b in zip(m, fv))
    Sg = sum(a * b for a, b in zip(m, gv))
    Sfg = sum(a * b * c for a, b, c in zip(m, fv, gv))
    S1 = sum(m)
    lhs, rhs = Sf * Sg, Sfg * S1
    holds = lhs <= rhs if direction == LEQ else lhs >= rhs
    params = lattice.params if family_params is None else family_params
    return Certificate(lattice.name, dirs[0], dirs[1], Sf, Sg, Sfg, S1, direction, holds,
                       "fkg", method, dict(params))


def _int_array(vals: list[int]) -> np.ndarray:
    if vals and max(vals) >= (1 << 61):
        return np.array(vals, dtype=object)
    return np.array(vals, dtype=np.int64)


def check_modular(lattice: Lattice, r, *, samples: int | None = None, seed: int = 0) -> Verdict:
    """r(x)+r(y) = r(x∧y)+r(x∨y) on every pair (sampled above ``DENSE_CAP``)."""
    R = _int_array(_values(lattice, r, "r", integral=True))
    n = lattice.size
    if n <= config.DENSE_CAP:
        M, J = lattice.meet_table, lattice.join_table
        bad = (R[:, None] + R[None, :]) != (R[M] + R[J])
        if bad.any():
            return Verdict(False, divmod(int(np.argmax(bad.ravel())), n))
        return Verdict(True)
    rng = np.random.default_rng(seed)
    x, y = rng.integers(0, n, size=(2, samples or config.SAMPLE_TRIPLES))
    bad = R[x] + R[y] != R[lattice.meet_many(x, y)] + R[lattice.join_many(x, y)]
    if bad.any():
        k = int(np.argmax(bad))
        return Verdict(False, (int(x[k]), int(y[k])), "sampled")
    return Verdict(True, None, "sampled")


def _qsum(R: np.ndarray, mask: np.ndarray) -> QPoly:
    sel = R[mask]
    if len(sel) == 0:
        return QPoly()
    if sel.dtype == object:
        return QPoly.from_powers(sel.tolist())
    return QPoly(np.bincount(sel).tolist())


def q_ideal_sum(lattice: Lattice, r, subset, *, check: bool = True) -> QPoly:
    """[S]_q = Σ_{x∈S} q^{r(x)}."""
    vals = _values(lattice, r, "r", integral=True)
    if check:
        v = check_modular(lattice, vals)
        if not v.holds:
            raise NotModular(v.witness)
    return _qsum(_int_array(vals), lattice.mask(subset))


def q_oil_check(lattice: Lattice, r, I: IdealHandle, J: IdealHandle, *,
                assume_distributive: bool = False, family_params: Mapping | None = None) -> Certificate:
    """[I]_q[J]_q vs [I∩J]_q[L]_q, coefficientwise; direction as in :func:`oil_check`."""
    _verify_ideal(lattice, I, "I")
    _verify_ideal(lattice, J, "J")
    method = _ensure_distributive(lattice, assume_distributive)
    vals = _values(lattice, r, "r", integral=True)
    v = check_modular(lattice, vals)
    if not v.holds:
        raise NotModular(v.witness)
    R = _int_array(vals)
    pI, pJ = _qsum(R, I.members), _qsum(R, J.members)
    pIJ, pL = _qsum(R, I.members & J.members), _qsum(R, np.ones(lattice.size, dtype=bool))
    direction = _direction(I.kind, J.kind)
    lhs, rhs = pI * pJ, pIJ * pL
    holds = qpoly_leq(lhs, rhs) if direction == LEQ else qpoly_leq(rhs, lhs)
    params = lattice.params if family_params is None else family_params
    return Certificate(lattice.name, I.kind, J.kind, pI, pJ, pIJ, pL, direction, holds,
                       "q", method, dict(params))


# --------------------------------------------------------------------------- Birkhoff


def order_ideals(poset: Poset, cap: int | None = None) -> np.ndarray:
    """All lower ideals of ``poset`` as 0/1 rows, ordered by size and then
    by member index tuple."""
    cap = config.max_elements() if cap is None else cap
    n = poset.n
    rows = np.zeros((1, n), dtype=np.int8)
    indptr, indices = poset.lower_csr
    for x in poset.topo.tolist():
        lows = indices[indptr[x]:indptr[x + 1]]
        ok = rows[:, lows].all(axis=1) if len(lows) else np.ones(len(rows), dtype=bool)
        add = rows[ok].copy()
        add[:, x] = 1
        if len(rows) + len(add) > cap:
            raise SizeLimitExceeded("order ideals", len(rows) + len(add), cap)
        rows = np.vstack([rows, add])
    size = rows.sum(axis=1)
    keys = [-rows[:, j] for j in range(n - 1, -1, -1)] + [size]
    return rows[np.lexsort(keys)] if n else rows


def _ideal_label(poset: Poset, row) -> str:
    return "{" + ",".join(poset.label(i) for i in np.flatnonzero(row).tolist()) + "}"


def birkhoff(poset: Poset, name: str = "", params: Mapping | None = None,
             cap: int | None = None) -> VectorLattice:
    """J(P): lower ideals ordered by inclusion (meet ∩, join ∪)."""
    rows = order_ideals(poset, cap)
    return VectorLattice(rows, lambda i: _ideal_label(poset, rows[i]),
                         name=name or f"J(P) |P|={poset.n}", params=params)


def count_ideals(poset: Poset) -> int:
    """Number of lower ideals, without enumerating them.

    Recursion on a pivot x: ideals avoiding x are ideals of P − ↑x, ideals
    containing x are ideals of P − ↓x; components multiply.
    """
    n = poset.n
    ranks_down = _bits_to_bool(poset.down, n) if n else np.zeros((0, 0), bool)
    below = [sum(1 << j for j in np.flatnonzero(ranks_down[x]).tolist()) for x in range(n)]
    above = [0] * n
    for x in range(n):
        for j in np.flatnonzero(ranks_down[x]).tolist():
            above[j] |= 1 << x
    nbr = [0] * n
    for a, b in poset.covers.tolist():
        nbr[a] |= 1 << b
        nbr[b] |= 1 << a

    def bits(mask):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    @lru_cache(maxsize=None)
    def count(mask: int) -> int:
        if mask == 0:
            return 1
        start = mask & -mask
        comp, frontier = start, start
        while frontier:
            grow = 0
            for x in bits(frontier):
                grow |= nbr[x]
            frontier = grow & mask & ~comp
            comp |= frontier
        if comp != mask:
            return count(comp) * count(mask & ~comp)
        pivot = max(bits(mask), key=lambda x: min((below[x] & mask).bit_count(),
                                                  (above[x] & mask).bit_count()))
        return count(mask & ~above[pivot]) + count(mask & ~below[pivot])

    return count((1 << n) - 1)


# --------------------------------------------------------------------------- export


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(obj, name: str = "L") -> str:
    """Hasse diagram in DOT, one node per element and one edge per cover,
    with elements of equal rank on one row."""
    poset = obj.poset if isinstance(obj, Lattice) else obj
    lines = [f'digraph "{_dot_escape(name)}" {{', "  rankdir=BT;", "  node [shape=plaintext];"]
    for i in range(poset.n):
        lines.append(f'  n{i} [label="{_dot_escape(poset.label(i))}"];')
    ranks = poset.ranks.tolist()
    for r in sorted(set(ranks)):
        members = " ".join(f"n{i};" for i in range(poset.n) if ranks[i] == r)
        lines.append(f"  {{ rank=same; {members} }}")
    for a, b in poset.covers.tolist():
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
