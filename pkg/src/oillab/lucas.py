"""Generalized Lucas sequences l_n = l_{n-1} + l_{n-2} and the posets L_n(r, s)."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CountMismatch, InputError, NotPositive, NotWellIndexed
from .lattice import (
    GEQ,
    LEQ,
    Certificate,
    Poset,
    birkhoff,
    count_ideals,
    oil_check,
    poset_from_covers,
)


def lucas_sequence(l0: int, l1: int, count: int) -> list[int]:
    """l_0, …, l_{count-1}."""
    out = [l0, l1][:count]
    while len(out) < count:
        out.append(out[-1] + out[-2])
    return out


def extended_value(l0: int, l1: int, k: int) -> tuple[int, int]:
    """(l_k, l_{k+1}) of the sequence extended to all integers."""
    a, b = l0, l1
    if k >= 0:
        for _ in range(k):
            a, b = b, a + b
    else:
        for _ in range(-k):
            a, b = b - a, a
    return a, b


def normalize_well_indexed(l0: int, l1: int) -> tuple[int, int, int]:
    """Shift k with 0 < 2·l_k ≤ l_{k+1}; returns (k, l_k, l_{k+1}).

    Candidates are scanned as k = 0, -1, 1, -2, 2, …, so the smallest |k|
    wins and ties go to k ≤ 0.
    """
    if l0 <= 0 or l1 <= 0:
        raise NotPositive(f"positive Lucas sequences need l0, l1 > 0 (got {l0}, {l1})")
    limit = 4 * (abs(l0) + abs(l1)) + 8
    for step in range(limit + 1):
        for k in ((0,) if step == 0 else (-step, step)):
            a, b = extended_value(l0, l1, k)
            if 0 < 2 * a <= b:
                return k, a, b
    raise InputError(f"no well-indexed shift found within {limit} steps")  # unreachable for positive input


def _check_well_indexed(r: int, s: int) -> None:
    if not 0 < 2 * r <= s:
        raise NotWellIndexed(f"need 0 < 2r ≤ s, got r={r}, s={s}")


def lucas_labels(s: int, n: int) -> list[str]:
    return [f"x{i}" for i in range(1, s)] + [f"y{j}" for j in range(2, n + 1)]


def build_lucas_poset(r: int, s: int, n: int) -> Poset:
    """L_n(r,s): chain x_1 ≺ … ≺ x_{s-1}, fence y_2 ≺ y_3 ≻ y_4 ≺ …, and y_2 ≺ x_r."""
    _check_well_indexed(r, s)
    if n < 1:
        raise InputError("n must be at least 1")
    labels = lucas_labels(s, n)
    covers = [(f"x{i}", f"x{i + 1}") for i in range(1, s - 1)]
    for j in range(2, n):
        covers.append((f"y{j}", f"y{j + 1}") if j % 2 == 0 else (f"y{j + 1}", f"y{j}"))
    if n >= 2:
        covers.append(("y2", f"x{r}"))
    return poset_from_covers(labels, covers)


def lucas_values_via_ideals(r: int, s: int, n_max: int) -> list[int]:
    """#J(L_n(r,s)) for n = 1..n_max, counted without materializing J."""
    _check_well_indexed(r, s)
    return [count_ideals(build_lucas_poset(r, s, n)) for n in range(1, n_max + 1)]


def _arithmetic_certificate(r: int, s: int) -> Certificate:
    # n = 1: l0·l2 = r(r+s) ≤ s² = l1², no ideal construction needed
    l0, l1, l2 = r, s, r + s
    return Certificate(f"lucas(r={r},s={s}) arithmetic", "lower", "upper", l1, l1, l0, l2,
                       GEQ, l1 * l1 >= l0 * l2, "count", "arithmetic",
                       {"r": r, "s": s, "n": 1})


def lucas_certificate(r: int, s: int, n: int) -> Certificate:
    """Log-concavity (odd n) or log-convexity (even n) of l at index n."""
    _check_well_indexed(r, s)
    if n < 1:
        raise InputError("n must be at least 1")
    if n == 1:
        return _arithmetic_certificate(r, s)
    P = build_lucas_poset(r, s, n + 1)
    lat = birkhoff(P, name=f"J(L_{n + 1}({r},{s}))", params={"r": r, "s": s, "n": n})
    col = {lab: i for i, lab in enumerate(P.labels)}
    c = lat.coords.astype(bool)
    y_last, y3 = c[:, col[f"y{n + 1}"]], c[:, col["y3"]]
    x_r, x_sr = c[:, col[f"x{r}"]], c[:, col[f"x{s - r}"]]
    # I cuts at the free end of the fence, J at the end attached to the chain
    if n % 2:
        I = lat.upper_ideal(y_last)
    else:
        I = lat.lower_ideal(~y_last)
    J = lat.lower_ideal(~x_r | (~x_sr & ~y3))
    seq = lucas_sequence(r, s, n + 2)
    got = (I.size, J.size, int((I.members & J.members).sum()))
    want = (seq[n], seq[n], seq[n - 1])
    if got != want:
        raise CountMismatch(f"L_{n + 1}({r},{s}): ideal sizes {got}, recursion gives {want}")
    cert = oil_check(lat, I, J, family_params={"r": r, "s": s, "n": n})
    expected = GEQ if n % 2 else LEQ
    if cert.direction != expected:
        raise CountMismatch(f"direction {cert.direction} at n={n}, expected {expected}")
    return cert


def index_verdict(a_prev: int, a: int, a_next: int) -> str:
    lhs, rhs = a * a, a_prev * a_next
    return "both" if lhs == rhs else "concave" if lhs > rhs else "convex"


@dataclass
class AlternationReport:
    l0: int
    l1: int
    shift: int
    r: int
    s: int
    rows: list[dict] = field(default_factory=list)

    @property
    def violations(self) -> list[int]:
        return [row["n"] for row in self.rows if not row["ok"]]

    @property
    def holds(self) -> bool:
        return not self.violations


def scan_alternation(l0: int, l1: int, n_max: int) -> AlternationReport:
    """Per-index verdicts of the well-indexed shift of (l0, l1), n = 1..n_max.

    Indices are those of the shifted sequence; ``shift`` records k with
    l'_n = l_{n+k}.
    """
    k, r, s = normalize_well_indexed(l0, l1)
    seq = lucas_sequence(r, s, n_max + 2)
    report = AlternationReport(l0, l1, k, r, s)
    for n in range(1, n_max + 1):
        v = index_verdict(seq[n - 1], seq[n], seq[n + 1])
        expected = "concave" if n % 2 else "convex"
        report.rows.append({"n": n, "l_n": seq[n], "verdict": v, "expected": expected,
                            "ok": v in (expected, "both")})
    return report
