"""Integer sequences, exact log-concavity analysis, and conjecture scans."""
from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Callable

from .errors import DivisibilityFailed, InputError, Mismatch, TooShort, UnknownFamily

CONCAVE, CONVEX, BOTH = "concave", "convex", "both"
PROVENANCES = ("lattice", "closed_form", "brute_force")


@dataclass
class SequenceRecord:
    """a_offset, a_{offset+1}, … with where the values came from."""

    name: str
    offset: int
    values: list[int]
    provenance: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.values:
            raise InputError("a sequence needs at least one value")
        if self.offset < 0:
            raise InputError("offset must be nonnegative")
        if self.provenance not in PROVENANCES:
            raise InputError(f"unknown provenance {self.provenance!r}")
        self.values = [int(v) for v in self.values]

    def indices(self) -> range:
        return range(self.offset, self.offset + len(self.values))

    def __getitem__(self, n: int) -> int:
        return self.values[n - self.offset]


@dataclass
class PropertyReport:
    record: SequenceRecord
    verdicts: dict[int, str]
    vacuous: set[int]

    @property
    def concave(self) -> bool:
        return all(v != CONVEX for v in self.verdicts.values())

    @property
    def convex(self) -> bool:
        return all(v != CONCAVE for v in self.verdicts.values())

    def violations(self, expect: str) -> list[int]:
        """Indices whose strict verdict contradicts ``expect``."""
        bad = CONVEX if expect == CONCAVE else CONCAVE
        return [n for n, v in self.verdicts.items() if v == bad]

    @property
    def pattern(self) -> str:
        """One word for the whole sequence."""
        strict = [v for n, v in sorted(self.verdicts.items()) if v != BOTH]
        if not strict:
            return BOTH
        if all(v == CONCAVE for v in strict):
            return CONCAVE
        if all(v == CONVEX for v in strict):
            return CONVEX
        if all(a != b for a, b in zip(strict, strict[1:])):
            return "alternating"
        flips = sum(a != b for a, b in zip(strict, strict[1:]))
        if flips == 1:
            return f"{strict[0]}→{strict[-1]}"
        return "mixed"

    def render(self, n: int) -> str:
        if n not in self.verdicts:
            return ""
        return "vacuous" if n in self.vacuous else self.verdicts[n]

    def rows(self) -> list[dict]:
        return [{"name": self.record.name, "n": n, "value": self.record[n], "verdict": self.render(n)}
                for n in self.record.indices()]

    def to_dict(self) -> dict:
        return {"name": self.record.name, "offset": self.record.offset,
                "provenance": self.record.provenance, "params": self.record.params,
                "values": self.record.values, "pattern": self.pattern,
                "verdicts": [{"n": n, "verdict": self.render(n)} for n in sorted(self.verdicts)]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "n", "value", "verdict"])
        for row in self.rows():
            w.writerow([row["name"], row["n"], row["value"], row["verdict"]])
        return buf.getvalue()


def index_verdict(a: int, b: int, c: int) -> str:
    """Verdict at the middle of (a, b, c): b² vs a·c, exactly."""
    lhs, rhs = b * b, a * c
    return BOTH if lhs == rhs else CONCAVE if lhs > rhs else CONVEX


def analyze(seq, offset: int = 0, name: str = "sequence") -> PropertyReport:
    """Verdicts at every index with both neighbours present.

    A zero among a_{n−1}, a_n, a_{n+1} makes the index ``vacuous`` in
    rendering; unless the verdict is strict it cannot mask a violation.
    """
    if not isinstance(seq, SequenceRecord):
        seq = SequenceRecord(name, offset, list(seq), "closed_form")
    v = seq.values
    if len(v) < 3:
        raise TooShort(f"need at least 3 values, got {len(v)}")
    verdicts, vacuous = {}, set()
    for i in range(1, len(v) - 1):
        n = seq.offset + i
        verdicts[n] = index_verdict(v[i - 1], v[i], v[i + 1])
        if 0 in (v[i - 1], v[i], v[i + 1]):
            vacuous.add(n)
    return PropertyReport(seq, verdicts, vacuous)


# --------------------------------------------------------------------------- closed forms


def _asm(n: int) -> int:
    num = den = 1
    for i in range(n):
        num *= factorial(3 * i + 1)
        den *= factorial(n + i)
    q, r = divmod(num, den)
    if r:
        raise DivisibilityFailed(f"ASM product formula left remainder at n={n}")
    return q


def _need(params, *names):
    missing = [p for p in names if params.get(p) is None]
    if missing:
        raise InputError(f"missing parameter(s): {', '.join(missing)}")
    return [params[p] for p in names]


def closed_form(family: str, n: int, **params) -> int:
    """catalan, narayana(k), asm, parking, binomial(k) = C(n+k,k), factorial."""
    if n < 0:
        raise InputError("n must be nonnegative")
    if family == "catalan":
        return comb(2 * n, n) // (n + 1)
    if family == "narayana":
        (k,) = _need(params, "k")
        from .setparts import narayana
        return narayana(n, int(k))
    if family == "asm":
        return _asm(n)
    if family == "parking":
        return (n + 1) ** (n - 1) if n >= 1 else 1
    if family == "binomial":
        (k,) = _need(params, "k")
        return comb(n + int(k), int(k))
    if family == "factorial":
        return factorial(n)
    raise UnknownFamily(f"no closed form for {family!r}")


# --------------------------------------------------------------------------- registry


def _gen_paths(family):
    def gen(n, **_):
        from .paths import path_count
        return path_count(family, n)
    return gen


def _gen_stirling2(n, k, **_):
    from .setparts import stirling2
    return stirling2(n, int(k))


def _gen_stirling1(n, k, **_):
    from .perms import stirling1
    return stirling1(n, int(k))


def _gen_lucas_values(n_max, l0, l1):
    from .lucas import lucas_sequence
    return lucas_sequence(int(l0), int(l1), n_max + 1)


def _gen_descent(n, S, **_):
    from .perms import descent_count
    return descent_count(S, n)


def _gen_peak(n, S, **_):
    from .perms import peak_count
    return peak_count(S, n)


def _gen_av(n, pattern, **_):
    from .perms import avoidance_count
    return avoidance_count(pattern, n)


def _gen_young(n, lam, **_):
    from .young import interval_size, shift_partition
    return interval_size(lam, shift_partition(lam, n))


def _gen_pinnacle(n, sigma, **_):
    from .perms import pinnacle_class
    return len(pinnacle_class(sigma, n))


# family -> (generator(n, **params), required params, offset, provenance)
REGISTRY: dict[str, tuple[Callable, tuple, int, str]] = {
    "catalan": (lambda n, **p: closed_form("catalan", n), (), 0, "closed_form"),
    "dyck": (_gen_paths("dyck"), (), 0, "closed_form"),
    "motzkin": (_gen_paths("motzkin"), (), 0, "closed_form"),
    "schroeder": (_gen_paths("schroeder"), (), 0, "closed_form"),
    "factorial": (lambda n, **p: factorial(n), (), 0, "closed_form"),
    "asm": (lambda n, **p: _asm(n), (), 0, "closed_form"),
    "parking": (lambda n, **p: closed_form("parking", n), (), 1, "closed_form"),
    "binomial": (lambda n, k, **p: comb(n + int(k), int(k)), ("k",), 0, "closed_form"),
    "narayana": (lambda n, k, **p: closed_form("narayana", n, k=k), ("k",), 1, "closed_form"),
    "stirling2": (_gen_stirling2, ("k",), 0, "closed_form"),
    "stirling1": (_gen_stirling1, ("k",), 0, "closed_form"),
    "descent": (_gen_descent, ("S",), 0, "brute_force"),
    "peak": (_gen_peak, ("S",), 1, "brute_force"),
    "av": (_gen_av, ("pattern",), 0, "brute_force"),
    "young": (_gen_young, ("lam",), 0, "closed_form"),
    "pinnacle": (_gen_pinnacle, ("sigma",), 1, "brute_force"),
    "lucas": (None, ("l0", "l1"), 0, "closed_form"),
}


def sequence(family: str, n_max: int, **params) -> SequenceRecord:
    """Values a_offset..a_{n_max} of a registered family."""
    if family not in REGISTRY:
        raise UnknownFamily(f"unknown sequence family {family!r}; known: {', '.join(sorted(REGISTRY))}")
    gen, required, offset, prov = REGISTRY[family]
    _need(params, *required)
    if n_max < offset:
        raise InputError(f"n_max must be at least {offset} for {family}")
    used = {p: params[p] for p in required}
    if family == "lucas":
        values = _gen_lucas_values(n_max, params["l0"], params["l1"])
    else:
        values = [gen(n, **used) for n in range(offset, n_max + 1)]
    return SequenceRecord(family, offset, values, prov, {k: _plain(v) for k, v in used.items()})


def _plain(v):
    if isinstance(v, (set, frozenset)):
        return sorted(v)
    if isinstance(v, tuple):
        return list(v)
    return v if isinstance(v, (int, str, list)) else str(v)


# --------------------------------------------------------------------------- cross checks


def _lattice_counts(family: str, params: dict, n_max: int) -> tuple[int, list[int]]:
    """(offset, counts) from materialized lattices or ideal counts."""
    if family in ("dyck", "motzkin", "schroeder"):
        from .paths import path_profiles
        return 0, [len(path_profiles(family, n)) for n in range(n_max + 1)]
    if family == "rgf":
        from .setparts import enumerate_rgfs
        k = int(params["k"])
        return k, [len(enumerate_rgfs(n, k)) for n in range(k, n_max + 1)]
    if family == "nc":
        from .setparts import enumerate_rgfs
        k = int(params["k"])
        return k, [len(enumerate_rgfs(n, k, noncrossing=True)) for n in range(k, n_max + 1)]
    if family == "lucas":
        from .lucas import lucas_values_via_ideals
        return 1, lucas_values_via_ideals(int(params["r"]), int(params["s"]), n_max)
    if family == "staircase":
        from .young import Partition, interval_size, staircase
        return 1, [interval_size(Partition(()), staircase(n)) for n in range(1, n_max + 1)]
    if family == "middle":
        from .perms import middle_lattice
        return 1, [middle_lattice(n).size for n in range(1, n_max + 1)]
    raise UnknownFamily(f"no lattice construction registered for {family!r}")


def _reference(family: str, params: dict, n: int) -> int:
    if family == "dyck" or family == "staircase":
        return closed_form("catalan", n)
    if family in ("motzkin", "schroeder"):
        from .paths import path_count
        return path_count(family, n)
    if family == "rgf":
        from .setparts import stirling2
        return stirling2(n, int(params["k"]))
    if family == "nc":
        return closed_form("narayana", n, k=params["k"])
    if family == "lucas":
        from .lucas import lucas_sequence
        return lucas_sequence(int(params["r"]), int(params["s"]), n + 1)[n]
    if family == "middle":
        return factorial(n)
    raise UnknownFamily(family)


@dataclass
class CrossCheckReport:
    family: str
    params: dict
    offset: int
    values: list[int]

    def to_dict(self) -> dict:
        return {"family": self.family, "params": self.params, "offset": self.offset,
                "values": self.values, "agree": True}


def cross_check(family: str, params: dict | None = None, n_max: int = 8) -> CrossCheckReport:
    """Lattice-derived counts against formulas or recurrences, index by index.

    Raises Mismatch at the first disagreement.
    """
    params = dict(params or {})
    offset, counts = _lattice_counts(family, params, n_max)
    for i, got in enumerate(counts):
        n = offset + i
        want = _reference(family, params, n)
        if got != want:
            raise Mismatch(n, want, got)
    return CrossCheckReport(family, params, offset, counts)


# --------------------------------------------------------------------------- conjectures


def s4_patterns() -> list[str]:
    return ["".join(map(str, p)) for p in itertools.permutations(range(1, 5))]


@dataclass
class Av4Report:
    n_max: int
    rows: list[dict]

    @property
    def violations(self) -> list[tuple[str, int]]:
        return [(r["pattern"], n) for r in self.rows for n in r["violations"]]

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"n_max": self.n_max, "holds": self.holds, "rows": self.rows}


def conjecture_av4(n_max: int = 9, threads: int = 1) -> Av4Report:
    """#Av_n(σ) for n = 0..n_max and every σ ∈ 𝔖₄, checked for log-convexity."""
    from .perms import avoidance_count

    if n_max < 2:
        raise InputError("n_max must be at least 2")
    patterns = s4_patterns()
    jobs = [(p, n) for p in patterns for n in range(n_max + 1)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            counts = list(ex.map(lambda job: avoidance_count(*job), jobs))
    else:
        counts = [avoidance_count(*job) for job in jobs]
    rows = []
    for i, p in enumerate(patterns):
        values = counts[i * (n_max + 1):(i + 1) * (n_max + 1)]
        rep = analyze(SequenceRecord(f"av({p})", 0, values, "brute_force", {"pattern": p}))
        rows.append({"pattern": p, "values": values, "pattern_verdict": rep.pattern,
                     "violations": rep.violations(CONVEX)})
    return Av4Report(n_max, rows)


@dataclass
class Stirling1Report:
    k_max: int
    n_max: int
    rows: list[dict]

    @property
    def holds(self) -> bool:
        return all(r["holds"] for r in self.rows)

    def to_dict(self) -> dict:
        return {"k_max": self.k_max, "n_max": self.n_max, "holds": self.holds, "rows": self.rows}


def conjecture_stirling1(k_max: int = 6, n_max: int = 40, threads: int = 1) -> Stirling1Report:
    """Candidate N_k per k, from :func:`perms.stirling1_threshold`."""
    from .perms import stirling1_threshold

    ks = list(range(1, k_max + 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            reps = list(ex.map(lambda k: stirling1_threshold(k, n_max), ks))
    else:
        reps = [stirling1_threshold(k, n_max) for k in ks]
    rows = [{"k": r.k, "threshold": r.threshold, "holds": r.holds, "violation": r.violation}
            for r in reps]
    return Stirling1Report(k_max, n_max, rows)


@dataclass
class PinnacleScan:
    sigma: tuple[int, ...]
    rows: list[dict]
    verdicts: dict[int, str]

    @property
    def holds(self) -> bool:
        """All probed classes are distributive lattices and no strict convexity."""
        return all(r["is_distributive"] or r["count"] == 0 for r in self.rows) and \
            all(v != CONVEX for v in self.verdicts.values())

    def to_dict(self) -> dict:
        return {"sigma": list(self.sigma), "holds": self.holds, "rows": self.rows,
                "verdicts": [{"n": n, "verdict": v} for n, v in sorted(self.verdicts.items())]}


def conjecture_pinnacle(sigma, n_max: int) -> PinnacleScan:
    """Probe Pin_n(σ) for n ≤ n_max: lattice structure and log-concavity."""
    from .perms import pinnacle_probe

    sigma = tuple(int(v) for v in sigma)
    start = max([*sigma, 1])
    rows = [pinnacle_probe(sigma, n).to_dict() for n in range(start, n_max + 1)]
    counts = [r["count"] for r in rows]
    verdicts = {}
    for i in range(1, len(counts) - 1):
        if 0 not in counts[i - 1:i + 2]:
            verdicts[start + i] = index_verdict(*counts[i - 1:i + 2])
    return PinnacleScan(sigma, rows, verdicts)
