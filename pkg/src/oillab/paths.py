"""Dyck, Motzkin and Schröder paths ordered by the area beneath them.

A path is stored by its height profile: the height at every integer
abscissa. A ``T`` step spans two units and its interior point keeps the
step's height. Every breakpoint is at an integer abscissa, so containment of
areas is exactly pointwise comparison of profiles, and meet/join are
pointwise min/max.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import config
from .errors import InputError, UnknownFamily
from .lattice import Certificate, VectorLattice, oil_check

FAMILIES = ("dyck", "motzkin", "schroeder")
STEP_ORDER = "UHTD"
_STEP = {"U": (1, 1), "D": (1, -1), "H": (1, 0), "T": (2, 0)}
_ALLOWED = {"dyck": "UD", "motzkin": "UHD", "schroeder": "UTD"}


@dataclass(frozen=True, slots=True)
class LatticePath:
    family: str
    steps: str

    def __str__(self) -> str:
        return self.steps

    @property
    def length(self) -> int:
        return sum(_STEP[s][0] for s in self.steps)


def _family(family: str) -> str:
    f = family.lower().replace("ö", "oe")
    if f not in FAMILIES:
        raise UnknownFamily(f"unknown path family {family!r}; expected one of {', '.join(FAMILIES)}")
    return f


def path_width(family: str, n: int) -> int:
    """Horizontal extent of a size-n path (2n for Dyck and Schröder semilength n)."""
    return n if _family(family) == "motzkin" else 2 * n


def _grow(family: str, width: int) -> np.ndarray:
    """All height profiles of the family with the given width, unordered."""
    rows = np.zeros((1, 1), dtype=np.int8)
    for x in range(width):
        h = rows[:, -1].astype(np.int64)
        remaining = width - x - 1
        children = []
        if family == "schroeder":
            mid_t = (x + h) % 2 == 1
            deltas = ((1, ~mid_t), (0, np.ones(len(h), bool)), (-1, ~mid_t))
        elif family == "motzkin":
            everywhere = np.ones(len(h), bool)
            deltas = ((1, everywhere), (0, everywhere), (-1, everywhere))
        else:
            everywhere = np.ones(len(h), bool)
            deltas = ((1, everywhere), (-1, everywhere))
        for d, allowed in deltas:
            nh = h + d
            ok = allowed & (nh >= 0) & (nh <= remaining)
            if family == "schroeder":
                # a T cannot start on the last unit
                ok &= ~((d == 0) & ~((x + h) % 2 == 1) & (remaining == 0))
            if ok.any():
                children.append(np.hstack([rows[ok], nh[ok, None].astype(np.int8)]))
        rows = np.vstack(children) if children else np.zeros((0, x + 2), dtype=np.int8)
    return rows


def path_profiles(family: str, n: int) -> np.ndarray:
    """Height profiles of all size-n paths, one row each, in canonical order.

    Canonical order is lexicographic on step strings with U < H < T < D.
    At a shared prefix that order ranks the next height from high to low,
    so it equals reverse-lexicographic order on profiles.
    """
    family = _family(family)
    if n < 0:
        raise InputError("n must be nonnegative")
    config.enforce_param(f"{family} size", n, config.PATH_CAPS[family])
    rows = _grow(family, path_width(family, n))
    if rows.shape[1] > 1:
        rows = rows[np.lexsort([-rows[:, j] for j in range(rows.shape[1] - 1, -1, -1)])]
    return rows


def steps_from_profile(family: str, heights) -> str:
    """Inverse of :func:`height_profile`; raises InputError for invalid profiles."""
    family = _family(family)
    h = [int(v) for v in heights]
    if not h or h[0] != 0 or h[-1] != 0 or min(h) < 0:
        raise InputError(f"not a {family} profile: {h}")
    out, x = [], 0
    while x < len(h) - 1:
        d = h[x + 1] - h[x]
        if d == 1:
            out.append("U")
            x += 1
        elif d == -1:
            out.append("D")
            x += 1
        elif d == 0 and family == "motzkin":
            out.append("H")
            x += 1
        elif d == 0 and family == "schroeder" and x + 2 < len(h) and h[x + 2] == h[x]:
            out.append("T")
            x += 2
        else:
            raise InputError(f"not a {family} profile: {h}")
    s = "".join(out)
    if any(c not in _ALLOWED[family] for c in s):
        raise InputError(f"not a {family} profile: {h}")
    return s


def _validate(path: LatticePath) -> LatticePath:
    family = _family(path.family)
    if any(c not in _ALLOWED[family] for c in path.steps):
        raise InputError(f"step not allowed in a {family} path: {path.steps!r}")
    y = 0
    for c in path.steps:
        y += _STEP[c][1]
        if y < 0:
            raise InputError(f"path goes below the axis: {path.steps!r}")
    if y != 0:
        raise InputError(f"path does not end on the axis: {path.steps!r}")
    return path


def height_profile(path: LatticePath | str, family: str | None = None) -> tuple[int, ...]:
    """Heights at abscissae 0..width."""
    if isinstance(path, str):
        path = LatticePath(family or ("schroeder" if "T" in path else "motzkin" if "H" in path else "dyck"), path)
    _validate(path)
    h = [0]
    for c in path.steps:
        dx, dy = _STEP[c]
        if dx == 2:
            h.append(h[-1])
        h.append(h[-1] + dy)
    return tuple(h)


def enumerate_paths(family: str, n: int) -> list[LatticePath]:
    """All size-n paths of ``family`` in canonical order."""
    family = _family(family)
    rows = path_profiles(family, n)
    return [LatticePath(family, s) for s in _step_strings(family, rows)]


def _step_strings(family: str, rows: np.ndarray) -> list[str]:
    if rows.shape[1] <= 1:
        return [""] * len(rows)
    diff = np.diff(rows.astype(np.int8), axis=1)
    if family != "schroeder":
        table = np.frombuffer(b"DHU", dtype=np.uint8)
        chars = table[diff + 1]
        width = chars.shape[1]
        return np.ascontiguousarray(chars).view(f"S{width}").ravel().astype(str).tolist()
    # the second unit of a T step carries no letter
    x = np.arange(diff.shape[1])
    second = (diff == 0) & (((x[None, :] + rows[:, :-1]) % 2) == 1)
    table = np.frombuffer(b"DTU", dtype=np.uint8)
    chars = table[diff + 1]
    chars[second] = ord(" ")
    width = chars.shape[1]
    raw = np.ascontiguousarray(chars).view(f"S{width}").ravel().astype(str)
    return [s.replace(" ", "") for s in raw.tolist()]


def path_count(family: str, n: int) -> int:
    """Count by height-state dynamic programming (no enumeration)."""
    family = _family(family)
    if n < 0:
        return 0
    width = path_width(family, n)
    # state: height, plus "inside a T" flag for Schröder
    ways = {(0, False): 1}
    for _ in range(width):
        nxt: dict = {}
        for (h, mid), w in ways.items():
            if mid:
                moves = [(h, False)]
            elif family == "dyck":
                moves = [(h + 1, False), (h - 1, False)]
            elif family == "motzkin":
                moves = [(h + 1, False), (h, False), (h - 1, False)]
            else:
                moves = [(h + 1, False), (h, True), (h - 1, False)]
            for state in moves:
                if state[0] >= 0:
                    nxt[state] = nxt.get(state, 0) + w
        ways = nxt
    return ways.get((0, False), 0)


def path_lattice(family: str, n: int) -> VectorLattice:
    """Size-n paths ordered by area; elements in canonical order."""
    family = _family(family)
    rows = path_profiles(family, n)
    labels = _step_strings(family, rows)
    return VectorLattice(rows, labels, name=f"{family}(n={n})", params={"family": family, "n": n})


def prefix_mask(lattice: VectorLattice) -> np.ndarray:
    """Paths starting with UD (Dyck), H (Motzkin) or T (Schröder)."""
    family = lattice.params["family"]
    h = lattice.coords
    col = 2 if family == "dyck" else 1
    if h.shape[1] <= col:
        return np.zeros(len(h), dtype=bool)
    return h[:, col] == 0


def suffix_mask(lattice: VectorLattice) -> np.ndarray:
    """Paths ending with UD, H or T."""
    family = lattice.params["family"]
    h = lattice.coords
    col = 2 if family == "dyck" else 1
    if h.shape[1] <= col:
        return np.zeros(len(h), dtype=bool)
    return h[:, -1 - col] == 0


def path_certificate(family: str, n: int) -> Certificate:
    """Log-convexity at n: |I|·|J| ≤ |I∩J|·|L| in the size-(n+1) lattice,
    I and J being the prefix- and suffix-marked lower ideals."""
    family = _family(family)
    if n < 1:
        raise InputError("path certificates need n ≥ 1")
    lat = path_lattice(family, n + 1)
    I = lat.lower_ideal(prefix_mask(lat))
    J = lat.lower_ideal(suffix_mask(lat))
    return oil_check(lat, I, J, family_params={"family": family, "n": n})


def rasterize(path: LatticePath | str, family: str | None = None, resolution: int = 2) -> frozenset:
    """Lattice points (scaled by ``resolution``) of the closed region between
    the path and the axis."""
    h = height_profile(path, family)
    points = set()
    for X in range((len(h) - 1) * resolution + 1):
        x = Fraction(X, resolution)
        i = min(int(x), len(h) - 2) if len(h) > 1 else 0
        if len(h) == 1:
            top = Fraction(0)
        else:
            top = h[i] + (h[i + 1] - h[i]) * (x - i)
        Y = 0
        while Fraction(Y, resolution) <= top:
            points.add((X, Y))
            Y += 1
    return frozenset(points)
