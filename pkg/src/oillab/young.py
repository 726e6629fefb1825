"""Integer partitions and intervals of Young's lattice."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import config
from .errors import InputError, NotComparable
from .lattice import Certificate, VectorLattice, oil_check


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing nonnegative parts; zero parts are kept."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise InputError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InputError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        return self.parts[i] if i < len(self.parts) else 0

    def stripped(self) -> "Partition":
        p = list(self.parts)
        while p and p[-1] == 0:
            p.pop()
        return Partition(tuple(p))

    def padded(self, k: int) -> "Partition":
        if k < len(self.parts):
            raise InputError(f"cannot pad {self} to fewer parts")
        return Partition(self.parts + (0,) * (k - len(self.parts)))

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()")
        if text in ("", "∅"):
            return cls(())
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t != ""))


def as_partition(x) -> Partition:
    if isinstance(x, Partition):
        return x
    if isinstance(x, str):
        return Partition.parse(x)
    return Partition(tuple(x))


def _label(parts) -> str:
    p = list(parts)
    while p and p[-1] == 0:
        p.pop()
    return ",".join(map(str, p)) if p else "∅"


def contains(lam, mu) -> bool:
    """Young-diagram containment; missing parts read as 0."""
    lam, mu = as_partition(lam), as_partition(mu)
    k = max(lam.length, mu.length)
    return all(lam.part(i) <= mu.part(i) for i in range(k))


def shift_partition(lam, n: int) -> Partition:
    """λ+n: add n to each of the explicitly listed parts."""
    if n < 0:
        raise InputError("shift must be nonnegative")
    lam = as_partition(lam)
    return Partition(tuple(p + n for p in lam.parts))


def _interval_rows(lam: Partition, mu: Partition) -> np.ndarray:
    if not contains(lam, mu):
        raise NotComparable(f"{lam} is not contained in {mu}")
    k = max(lam.length, mu.length)
    lo = [lam.part(i) for i in range(k)]
    hi = [mu.part(i) for i in range(k)]
    cap = config.max_elements()
    rows = np.zeros((1, 0), dtype=np.int64)
    for i in range(k):
        blocks = []
        prev = rows[:, -1] if i else np.full(len(rows), hi[0])
        for v in range(lo[i], hi[i] + 1):
            ok = prev >= v
            if ok.any():
                blocks.append(np.hstack([rows[ok], np.full((int(ok.sum()), 1), v, dtype=np.int64)]))
        rows = np.vstack(blocks)
        if len(rows) > cap:
            config.enforce("interval elements", len(rows))
    if k:
        rows = rows[np.lexsort([rows[:, j] for j in range(k - 1, -1, -1)])]
    return rows


def interval_elements(lam, mu) -> list[Partition]:
    """All ν with λ ⊆ ν ⊆ μ, lexicographic on parts (padded to a common length)."""
    return [Partition(tuple(r)) for r in _interval_rows(as_partition(lam), as_partition(mu)).tolist()]


def interval_size(lam, mu) -> int:
    """#[λ, μ] by a row-by-row count (no enumeration)."""
    lam, mu = as_partition(lam), as_partition(mu)
    if not contains(lam, mu):
        raise NotComparable(f"{lam} is not contained in {mu}")
    k = max(lam.length, mu.length)
    if not k:
        return 1
    ways = {v: 1 for v in range(lam.part(0), mu.part(0) + 1)}
    for i in range(1, k):
        nxt: dict[int, int] = {}
        for prev, w in ways.items():
            for v in range(lam.part(i), min(mu.part(i), prev) + 1):
                nxt[v] = nxt.get(v, 0) + w
        ways = nxt
    return sum(ways.values())


def interval_lattice(lam, mu) -> VectorLattice:
    """[λ, μ] under containment; meet and join are partwise min and max."""
    lam, mu = as_partition(lam), as_partition(mu)
    rows = _interval_rows(lam, mu)
    return VectorLattice(rows, [_label(r) for r in rows.tolist()],
                         name=f"young[{_label(lam.parts)};{_label(mu.parts)}]",
                         params={"lambda": str(lam), "mu": str(mu)})


def skew_interval_lattice(outer, inner, n: int) -> VectorLattice:
    """[λ/ν, (λ+n)/(ν+n)]: skew shapes β/α with ν ⊆ α ⊆ ν+n, λ ⊆ β ⊆ λ+n and
    α ⊆ β, ordered componentwise on (α, β). An inner shape with no parts
    gives the straight interval [λ, λ+n]."""
    lam, nu = as_partition(outer), as_partition(inner)
    if not contains(nu, lam):
        raise NotComparable(f"inner shape {nu} is not contained in {lam}")
    betas = _interval_rows(lam, shift_partition(lam, n))
    if nu.length == 0:
        return VectorLattice(betas, [_label(r) for r in betas.tolist()],
                             name=f"young[{_label(lam.parts)};+{n}]",
                             params={"lambda": str(lam), "n": n})
    alphas = _interval_rows(nu, shift_partition(nu, n))
    k = max(lam.length, nu.length)
    A = np.zeros((len(alphas), k), dtype=np.int64)
    A[:, :alphas.shape[1]] = alphas
    B = np.zeros((len(betas), k), dtype=np.int64)
    B[:, :betas.shape[1]] = betas
    config.enforce("skew interval pairs", len(A) * len(B))
    ok = (A[:, None, :] <= B[None, :, :]).all(axis=2)
    ai, bi = np.nonzero(ok)  # row-major: ordered by α then β
    rows = np.hstack([alphas[ai], betas[bi]])
    labels = [f"{_label(b)}/{_label(a)}" for a, b in zip(alphas[ai].tolist(), betas[bi].tolist())]
    return VectorLattice(rows, labels, name=f"young[{lam}/{nu};+{n}]",
                         params={"lambda": str(lam), "inner": str(nu), "n": n})


def young_certificate(lam, k: int | None = None, n: int = 1, inner=None) -> Certificate:
    """Log-concavity of #[λ, λ+n] at n.

    Inside L = [λ, λ+(n+1)]: I = [λ, λ+n] (lower) and J = [λ+1, λ+(n+1)]
    (upper). ``k`` pads λ with zero parts to an explicit length.
    """
    lam = as_partition(lam)
    if k is not None:
        lam = lam.padded(k)
    if n < 1:
        raise InputError("young certificates need n ≥ 1")
    nu = Partition(()) if inner is None else as_partition(inner)
    lat = skew_interval_lattice(lam, nu, n + 1)
    lo = np.concatenate([np.asarray(nu.parts, dtype=np.int64), np.asarray(lam.parts, dtype=np.int64)])
    c = lat.coords
    I = lat.lower_ideal((c <= lo + n).all(axis=1))
    J = lat.upper_ideal((c >= lo + 1).all(axis=1))
    params = {"lambda": str(lam), "k": lam.length, "n": n}
    if nu.length:
        params["inner"] = str(nu)
    return oil_check(lat, I, J, family_params=params)


def staircase(n: int) -> Partition:
    """(n−1, n−2, …, 1, 0)."""
    return Partition(tuple(range(n - 1, -1, -1)))
