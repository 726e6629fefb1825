"""P-partitions, enriched P-partitions, and Schur / Schur-Q specializations.

A labeled poset lives on [p]; element ``i`` (1-based) carries label ``i``.
Enriched values are nonzero integers, ``-v`` standing for v̄, ordered
1̄ ◁ 1 ◁ 2̄ ◁ 2 ◁ …; internally they are stored as keys 2|v| − [v < 0].
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import config
from .errors import InputError, NotStrict
from .lattice import (
    GEQ,
    LOWER,
    UPPER,
    Certificate,
    Poset,
    VectorLattice,
    oil_check,
    poset_from_covers,
    q_oil_check,
)
from .qpoly import QPoly
from .young import as_partition

ORDINARY, ENRICHED, QMODE = "ordinary", "enriched", "q"


def enriched_key(v: int) -> int:
    """Sort key realizing 1̄ ◁ 1 ◁ 2̄ ◁ 2 ◁ …"""
    if v == 0:
        raise InputError("enriched values are nonzero")
    return 2 * abs(v) - (v < 0)


def enriched_value(key: int) -> int:
    return key // 2 if key % 2 == 0 else -((key + 1) // 2)


def format_enriched(v: int) -> str:
    return f"{-v}̄" if v < 0 else str(v)


@dataclass(frozen=True)
class LabeledPoset:
    """Poset on [p] given by 1-based relations ``(a, b)`` meaning a ≺ b.

    Relations may include non-covers; they are reduced to covers.
    ``cells`` records the diagram cell of each element for shape posets.
    """

    p: int
    relations: tuple[tuple[int, int], ...]
    cells: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        rel = tuple(sorted({(int(a), int(b)) for a, b in self.relations}))
        for a, b in rel:
            if not (1 <= a <= self.p and 1 <= b <= self.p):
                raise InputError(f"relation {(a, b)} outside [1, {self.p}]")
        object.__setattr__(self, "relations", rel)

    @cached_property
    def poset(self) -> Poset:
        labels = [str(i + 1) for i in range(self.p)]
        return _reduce(labels, [(a - 1, b - 1) for a, b in self.relations])

    @property
    def covers(self) -> list[tuple[int, int]]:
        """1-based cover pairs."""
        return [(a + 1, b + 1) for a, b in self.poset.covers.tolist()]

    def is_naturally_labeled(self) -> bool:
        return all(a < b for a, b in self.covers)

    def to_json(self) -> str:
        return json.dumps({"p": self.p, "covers": [list(c) for c in self.covers]})

    @classmethod
    def from_json(cls, text: str | dict) -> "LabeledPoset":
        data = json.loads(text) if isinstance(text, str) else text
        return cls(int(data["p"]), tuple(tuple(c) for c in data.get("covers", [])))


def _reduce(labels, pairs) -> Poset:
    # close transitively first so repeated or implied relations are accepted
    n = len(labels)
    reach = [set() for _ in range(n)]
    for a, b in pairs:
        reach[a].add(b)
    changed = True
    while changed:
        changed = False
        for a in range(n):
            extra = set().union(*(reach[b] for b in reach[a])) - reach[a] if reach[a] else set()
            if extra:
                reach[a] |= extra
                changed = True
        if any(a in reach[a] for a in range(n)):
            break
    return poset_from_covers(labels, sorted((a, b) for a in range(n) for b in reach[a]))


def _rows(P: LabeledPoset, n: int, enriched: bool) -> np.ndarray:
    """Value keys of all (enriched) P-partitions, lexicographic by element."""
    p = P.p
    top = 2 * n if enriched else n
    if n <= 0:
        return np.zeros((1 if p == 0 else 0, p), dtype=np.int64)
    poset = P.poset
    indptr, indices = poset.lower_csr
    cap = config.max_elements()
    rows = np.zeros((1, p), dtype=np.int64)
    placed = []
    for x in poset.topo.tolist():
        rep = np.repeat(rows, top, axis=0)
        rep[:, x] = np.tile(np.arange(1, top + 1), len(rows))
        keep = np.ones(len(rep), dtype=bool)
        for w in indices[indptr[x]:indptr[x + 1]].tolist():
            a, b = rep[:, w], rep[:, x]  # w ⋖ x
            if enriched:
                eq = a == b
                positive = b % 2 == 0
                ok_eq = np.where(positive, w < x, w > x)
                keep &= (a < b) | (eq & ok_eq)
            else:
                keep &= (a < b) if w > x else (a <= b)
        rows = rep[keep]
        placed.append(x)
        if len(rows) > cap:
            config.enforce("P-partitions", len(rows))
    if p:
        rows = rows[np.lexsort([rows[:, j] for j in range(p - 1, -1, -1)])]
    return rows


def enumerate_p_partitions(P: LabeledPoset, n: int, enriched: bool = False) -> list[tuple[int, ...]]:
    """All (enriched) P-partitions with range [n] (resp. ⟨n⟩) as value tuples
    indexed by element 1..p, in lexicographic order (under ◁ when enriched)."""
    if n < 0:
        raise InputError("n must be nonnegative")
    rows = _rows(P, n, enriched)
    if enriched:
        return [tuple(enriched_value(k) for k in r) for r in rows.tolist()]
    return [tuple(r) for r in rows.tolist()]


def order_poly_value(P: LabeledPoset, n: int, enriched: bool = False) -> int:
    """Ω_P(n) or Ω_P^e(n). At n = 0 this is 1 for the empty poset, else 0."""
    if n < 0:
        raise InputError("n must be nonnegative")
    return len(_rows(P, n, enriched))


def _row_label(row, enriched: bool) -> str:
    if enriched:
        return ",".join(format_enriched(enriched_value(k)) for k in row)
    return ",".join(map(str, row))


def ppartition_lattice(P: LabeledPoset, n: int, enriched: bool = False) -> VectorLattice:
    """Componentwise order (under ◁ when enriched); meet/join are min/max."""
    rows = _rows(P, n, enriched)
    if len(rows) == 0:
        raise InputError(f"no P-partitions with range {n}")
    kind = ENRICHED if enriched else ORDINARY
    return VectorLattice(rows, [_row_label(r, enriched) for r in rows.tolist()],
                         name=f"O_P({n}) {kind} p={P.p}",
                         params={"p": P.p, "covers": P.covers, "n": n, "mode": kind})


def op_certificate(P: LabeledPoset, n: int, mode: str = ORDINARY) -> Certificate:
    """Log-concavity of Ω_P (or Ω_P^e) at n, inside the range-(n+1) lattice.

    I = {f ≤ n everywhere} (lower), J = {f ≥ 2 everywhere} (upper). In q
    mode r(f) = Σ f(x) (ordinary values), which is modular, and the
    polynomial certificate is q^p times the statement for Σ_f q^{r(f)}.
    """
    if mode not in (ORDINARY, ENRICHED, QMODE):
        raise InputError(f"unknown mode {mode!r}")
    if n < 1:
        raise InputError("order polynomial certificates need n ≥ 1")
    enriched = mode == ENRICHED
    params = {"p": P.p, "covers": P.covers, "n": n, "mode": mode}
    if len(_rows(P, n + 1, enriched)) == 0:
        # Ω(n+1) = 0 forces Ω(n) = Ω(n−1) = 0: 0·0 ≥ 0·0 with no lattice to build
        zero = QPoly() if mode == QMODE else 0
        return Certificate(f"O_P({n + 1}) {mode} p={P.p} (empty)", LOWER, UPPER, zero, zero, zero,
                           zero, GEQ, True, "q" if mode == QMODE else "count", "vacuous", params)
    lat = ppartition_lattice(P, n + 1, enriched)
    c = lat.coords
    hi, lo = (2 * n, 3) if enriched else (n, 2)
    I = lat.lower_ideal((c <= hi).all(axis=1))
    J = lat.upper_ideal((c >= lo).all(axis=1))
    if mode == QMODE:
        return q_oil_check(lat, c.sum(axis=1).tolist(), I, J, family_params=params)
    return oil_check(lat, I, J, family_params=params)


# --------------------------------------------------------------------------- shapes


def _cells(lam, shifted: bool) -> list[tuple[int, int]]:
    lam = as_partition(lam).stripped()
    parts = lam.parts
    if shifted and any(a <= b for a, b in zip(parts, parts[1:])):
        raise NotStrict(f"shifted shapes need a strict partition, got {lam}")
    cells = []
    for i, part in enumerate(parts, start=1):
        start = i if shifted else 1
        cells.extend((i, j) for j in range(start, start + part))
    return cells


def shape_poset(lam, shifted: bool = False) -> LabeledPoset:
    """Cells of λ under (i,j) ≼ (i',j') iff i ≤ i' and j ≤ j', labeled bottom
    row first, left to right, then upward."""
    cells = _cells(lam, shifted)
    order = sorted(cells, key=lambda c: (-c[0], c[1]))
    label = {cell: k + 1 for k, cell in enumerate(order)}
    rel = []
    for (i, j) in cells:
        for nb in ((i, j + 1), (i + 1, j)):
            if nb in label:
                rel.append((label[(i, j)], label[nb]))
    return LabeledPoset(len(cells), tuple(rel), tuple(order))


def _tableaux(lam, n: int, shifted: bool):
    """Yield fillings (dict cell → value) by direct row-by-row search."""
    cells = _cells(lam, shifted)
    if n <= 0:
        if not cells:
            yield {}
        return
    values = list(range(1, n + 1)) if not shifted else [v for m in range(1, n + 1) for v in (-m, m)]
    key = enriched_key if shifted else (lambda v: v)
    T: dict = {}

    def ok(cell, v):
        i, j = cell
        left, up = T.get((i, j - 1)), T.get((i - 1, j))
        if not shifted:
            return (left is None or left <= v) and (up is None or up < v)
        for nb in (left, up):
            if nb is not None and key(nb) > key(v):
                return False
        # (T2): no repeated m̄ in a row, no repeated m in a column
        if v < 0 and left == v:
            return False
        if v > 0 and up == v:
            return False
        return True

    def rec(k):
        if k == len(cells):
            yield dict(T)
            return
        cell = cells[k]
        for v in values:
            if ok(cell, v):
                T[cell] = v
                yield from rec(k + 1)
                del T[cell]

    yield from rec(0)


def enumerate_tableaux(lam, n: int, shifted: bool = False) -> list[dict]:
    return list(_tableaux(lam, n, shifted))


def schur_value(lam, n: int, shifted: bool = False) -> int:
    """s_λ(1ⁿ) (or Q_λ(1ⁿ)) by counting tableaux directly."""
    if n < 0:
        raise InputError("n must be nonnegative")
    return sum(1 for _ in _tableaux(lam, n, shifted))


def schur_q_poly(lam, n: int) -> QPoly:
    """s_λ(q, q², …, qⁿ) = Σ_T q^{ΣT}."""
    if n < 0:
        raise InputError("n must be nonnegative")
    return QPoly.from_powers(sum(T.values()) for T in _tableaux(lam, n, False))


def ssyt_lattice(lam, n: int, shifted: bool = False) -> VectorLattice:
    """Tableaux of shape λ with entries ≤ n, as P_λ-partitions."""
    lat = ppartition_lattice(shape_poset(lam, shifted), n, shifted)
    lat.params.update({"lambda": str(as_partition(lam).stripped()), "shifted": shifted})
    return lat


def schur_certificate(lam, n: int, mode: str = ORDINARY) -> Certificate:
    """op_certificate on the shape poset (shifted when ``mode='enriched'``)."""
    P = shape_poset(lam, shifted=(mode == ENRICHED))
    cert = op_certificate(P, n, mode)
    cert.family_params["lambda"] = str(as_partition(lam).stripped())
    return cert


def finite_difference(values: Sequence[int], order: int) -> list[int]:
    v = list(values)
    for _ in range(order):
        v = [b - a for a, b in zip(v, v[1:])]
    return v
