"""``oillab`` command line.

Exit codes: 0 holds / no violations, 1 violated, 2 usage or parameter
error, 3 size cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import config
from .errors import InputError, OilLabError, SizeLimitExceeded

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

CERT_FAMILIES = ("dyck", "motzkin", "schroeder", "young", "orderpoly", "schur", "lucas",
                 "factorial", "descent", "av213", "stirling2", "narayana")
Q_FAMILIES = ("orderpoly", "schur")
EXPORT_FAMILIES = ("middle", "dyck", "motzkin", "schroeder", "rgf", "nc", "young",
                   "ppartition", "descent", "av213", "lucas")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --------------------------------------------------------------------------- parsing helpers


def parse_int_set(text: str | None) -> frozenset:
    if text is None:
        return frozenset()
    t = text.strip().strip("{}")
    if not t:
        return frozenset()
    return frozenset(int(v) for v in t.split(",") if v.strip())


def parse_int_list(text: str | None) -> tuple[int, ...]:
    if text is None:
        return ()
    t = text.strip().strip("()")
    if not t or t == "∅":
        return ()
    return tuple(int(v) for v in t.split(",") if v.strip())


def _load_poset(text: str):
    from .orderpoly import LabeledPoset

    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return LabeledPoset.from_json(text)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read poset JSON: {exc}") from exc


def _need(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required for {args.family or args.name}")


# --------------------------------------------------------------------------- rendering


def _table(header: list[str], rows: list[list]) -> str:
    cells = [list(map(str, header))] + [[("" if c is None else str(c)) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _render_cert(cert, fmt: str) -> str:
    d = cert.to_dict()
    if fmt == "json":
        return _json(d)
    rows = [["lattice", d["lattice"]],
            ["params", json.dumps(d["family_params"], sort_keys=True, ensure_ascii=False)],
            ["I", f"{d['ideal_I']['kind']} ideal, size {_fmt_val(d['ideal_I']['size'])}"],
            ["J", f"{d['ideal_J']['kind']} ideal, size {_fmt_val(d['ideal_J']['size'])}"],
            ["|I∩J|", _fmt_val(d["intersection_size"])],
            ["|L|", _fmt_val(d["lattice_size"])],
            ["inequality", f"{_fmt_val(d['lhs'])} {d['direction']} {_fmt_val(d['rhs'])}"],
            ["mode", d["mode"]],
            ["distributivity", d["distributivity"]],
            ["verdict", d["verdict"]]]
    if fmt == "csv":
        return _csv(["field", "value"], rows)
    return _table(["field", "value"], rows)


def _fmt_val(v) -> str:
    if isinstance(v, list):  # q-polynomial coefficients
        from .qpoly import QPoly
        return str(QPoly(tuple(v)))
    return str(v)


# --------------------------------------------------------------------------- verbs


def _sequence_params(args) -> dict:
    fam = args.family
    p = {}
    if fam in ("binomial", "narayana", "stirling2", "stirling1"):
        _need(args, "k")
        p["k"] = args.k
    elif fam in ("descent", "peak"):
        p["S"] = parse_int_set(args.set)
    elif fam == "av":
        _need(args, "pattern")
        p["pattern"] = args.pattern
    elif fam == "young":
        _need(args, "lam")
        p["lam"] = parse_int_list(args.lam)
    elif fam == "pinnacle":
        p["sigma"] = parse_int_list(args.sigma)
    elif fam == "lucas":
        _need(args, "l0", "l1")
        p["l0"], p["l1"] = args.l0, args.l1
    return p


def cmd_sequence(args) -> tuple[str, int]:
    from .seqlab import REGISTRY, analyze, sequence

    if args.family not in REGISTRY:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(sorted(REGISTRY))}")
    rec = sequence(args.family, args.n_max, **_sequence_params(args))
    rep = analyze(rec) if len(rec.values) >= 3 else None
    rows = [[n, rec[n], rep.render(n) if rep else ""] for n in rec.indices()]
    if args.format == "json":
        out = rep.to_dict() if rep else {"name": rec.name, "offset": rec.offset,
                                         "values": rec.values, "provenance": rec.provenance}
        return _json(out), EXIT_OK
    if args.format == "csv":
        return _csv(["name", "n", "value", "verdict"], [[rec.name, *r] for r in rows]), EXIT_OK
    if args.format == "dot":
        raise UsageError("sequences have no DOT rendering")
    text = _table(["n", "value", "verdict"], rows)
    if rep:
        text += f"pattern: {rep.pattern}\n"
    return text, EXIT_OK


def _certificate(args, q: bool = False):
    fam = args.family
    if fam in ("dyck", "motzkin", "schroeder"):
        from .paths import path_certificate
        _need(args, "n")
        return path_certificate(fam, args.n)
    if fam == "young":
        from .young import young_certificate
        _need(args, "lam", "n")
        inner = parse_int_list(args.inner) if args.inner else None
        return young_certificate(parse_int_list(args.lam), args.k, args.n, inner)
    if fam == "orderpoly":
        from .orderpoly import op_certificate
        _need(args, "poset", "n")
        return op_certificate(_load_poset(args.poset), args.n, "q" if q else args.mode)
    if fam == "schur":
        from .orderpoly import schur_certificate
        _need(args, "lam", "n")
        return schur_certificate(parse_int_list(args.lam), args.n, "q" if q else args.mode)
    if fam == "lucas":
        from .lucas import lucas_certificate
        _need(args, "r", "s", "n")
        return lucas_certificate(args.r, args.s, args.n)
    if fam == "factorial":
        from .perms import factorial_certificate
        _need(args, "n")
        return factorial_certificate(args.n)
    if fam == "descent":
        from .perms import descent_class_certificate
        _need(args, "n")
        return descent_class_certificate(parse_int_set(args.set), args.n)
    if fam == "av213":
        from .perms import av213_certificate
        _need(args, "n")
        return av213_certificate(args.n)
    if fam == "stirling2":
        from .setparts import stirling2_certificate
        _need(args, "n", "k")
        return stirling2_certificate(args.n, args.k)
    if fam == "narayana":
        from .setparts import narayana_certificate
        _need(args, "n", "k")
        return narayana_certificate(args.n, args.k)
    raise UsageError(f"unknown family {fam!r}")


def cmd_certify(args) -> tuple[str, int]:
    if args.family not in CERT_FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(CERT_FAMILIES)}")
    if args.format == "dot":
        raise UsageError("certificates have no DOT rendering; use export")
    cert = _certificate(args)
    return _render_cert(cert, args.format), EXIT_OK if cert.holds else EXIT_VIOLATED


def cmd_qcertify(args) -> tuple[str, int]:
    if args.family not in Q_FAMILIES:
        raise UsageError(f"q-certificates exist for {', '.join(Q_FAMILIES)}")
    if args.format == "dot":
        raise UsageError("certificates have no DOT rendering; use export")
    cert = _certificate(args, q=True)
    text = _render_cert(cert, args.format)
    if args.q is not None:
        text += _render_cert(cert.specialize(args.q), args.format)
    return text, EXIT_OK if cert.holds else EXIT_VIOLATED


def cmd_conjecture(args) -> tuple[str, int]:
    from . import seqlab

    name = args.name
    if name == "av4":
        rep = seqlab.conjecture_av4(args.n_max if args.n_max is not None else 9, threads=args.threads)
        header = ["pattern", "values", "verdict", "violations"]
        rows = [[r["pattern"], " ".join(map(str, r["values"])), r["pattern_verdict"],
                 ",".join(map(str, r["violations"]))] for r in rep.rows]
    elif name == "stirling1":
        rep = seqlab.conjecture_stirling1(args.k_max if args.k_max is not None else 6,
                                          args.n_max if args.n_max is not None else 40,
                                          threads=args.threads)
        header = ["k", "N_k", "holds", "violation"]
        rows = [[r["k"], r["threshold"], r["holds"], r["violation"]] for r in rep.rows]
    elif name == "pinnacle":
        _need(args, "n_max")
        rep = seqlab.conjecture_pinnacle(parse_int_list(args.sigma), args.n_max)
        verdict = {d["n"]: d["verdict"] for d in rep.to_dict()["verdicts"]}
        header = ["n", "count", "lattice", "distributive", "verdict"]
        rows = [[r["n"], r["count"], r["is_lattice"], r["is_distributive"], verdict.get(r["n"], "")]
                for r in rep.rows]
    else:
        raise UsageError(f"unknown conjecture {name!r}; choose av4, stirling1 or pinnacle")
    code = EXIT_OK if rep.holds else EXIT_VIOLATED
    if args.format == "json":
        return _json(rep.to_dict()), code
    if args.format == "csv":
        return _csv(header, rows), code
    if args.format == "dot":
        raise UsageError("conjecture reports have no DOT rendering")
    return _table(header, rows), code


def _export_lattice(args):
    fam = args.family
    if fam == "middle":
        from .perms import middle_lattice
        _need(args, "n")
        return middle_lattice(args.n, args.kind)
    if fam in ("dyck", "motzkin", "schroeder"):
        from .paths import path_lattice
        _need(args, "n")
        return path_lattice(fam, args.n)
    if fam in ("rgf", "nc"):
        from .setparts import rgf_lattice
        _need(args, "n", "k")
        return rgf_lattice(args.n, args.k, fam == "nc" or args.noncrossing)
    if fam == "young":
        from .young import interval_lattice, shift_partition
        _need(args, "lam")
        lam = parse_int_list(args.lam)
        if args.mu is not None:
            return interval_lattice(lam, parse_int_list(args.mu))
        _need(args, "n")
        return interval_lattice(lam, shift_partition(lam, args.n))
    if fam == "ppartition":
        from .orderpoly import ppartition_lattice
        _need(args, "poset", "n")
        return ppartition_lattice(_load_poset(args.poset), args.n, args.mode == "enriched")
    if fam == "descent":
        from .perms import descent_class_lattice
        _need(args, "n")
        return descent_class_lattice(parse_int_set(args.set), args.n)
    if fam == "av213":
        from .perms import avoidance_class_lattice
        _need(args, "n")
        return avoidance_class_lattice(args.n)
    if fam == "lucas":
        from .lattice import birkhoff
        from .lucas import build_lucas_poset
        _need(args, "r", "s", "n")
        return birkhoff(build_lucas_poset(args.r, args.s, args.n), name=f"J(L_{args.n}({args.r},{args.s}))")
    raise UsageError(f"unknown family {fam!r}; choose from {', '.join(EXPORT_FAMILIES)}")


def cmd_export(args) -> tuple[str, int]:
    from .lattice import to_dot

    lat = _export_lattice(args)
    config.enforce("exported lattice", lat.size, config.DENSE_CAP)
    fmt = "dot" if args.format == "table" else args.format
    poset = lat.poset
    if fmt == "dot":
        return to_dot(lat, lat.name or args.family), EXIT_OK
    labels = [poset.label(i) for i in range(poset.n)]
    edges = [[labels[a], labels[b]] for a, b in poset.covers.tolist()]
    if fmt == "json":
        return _json({"lattice": lat.name, "elements": labels, "covers": edges}), EXIT_OK
    return _csv(["lower", "upper"], edges), EXIT_OK


# --------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="oillab", description="Order Ideal Lemma certificates and sequence tools.")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)

    def common(sp, default_format="table"):
        sp.add_argument("--format", choices=("table", "json", "csv", "dot"), default=default_format)
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--n", type=int)
        sp.add_argument("--k", type=int)
        sp.add_argument("--set", help="comma list, e.g. 1,4 (empty for ∅)")
        sp.add_argument("--lambda", dest="lam", help="comma-separated parts")
        sp.add_argument("--inner", help="inner shape for skew intervals")
        sp.add_argument("--mu", help="upper shape for Young intervals")
        sp.add_argument("--poset", help="labeled poset JSON or a path to it")
        sp.add_argument("--mode", choices=("ordinary", "enriched"), default="ordinary")
        sp.add_argument("--r", type=int)
        sp.add_argument("--s", type=int)
        sp.add_argument("--l0", type=int)
        sp.add_argument("--l1", type=int)
        sp.add_argument("--pattern")
        sp.add_argument("--sigma", help="comma list of pinnacle values")
        sp.add_argument("--n-max", dest="n_max", type=int)
        sp.add_argument("--k-max", dest="k_max", type=int)

    s = sub.add_parser("sequence", help="emit a sequence with per-index verdicts")
    s.add_argument("family")
    common(s)
    s.set_defaults(func=cmd_sequence, name=None)

    c = sub.add_parser("certify", help="Order Ideal Lemma certificate")
    c.add_argument("family")
    common(c)
    c.set_defaults(func=cmd_certify, name=None)

    q = sub.add_parser("qcertify", help="coefficientwise q-certificate")
    q.add_argument("family")
    common(q)
    q.add_argument("--q", type=int, help="also print the specialization at this q")
    q.set_defaults(func=cmd_qcertify, name=None)

    j = sub.add_parser("conjecture", help="run a conjecture scan")
    j.add_argument("name")
    common(j)
    j.set_defaults(func=cmd_conjecture, family=None)

    e = sub.add_parser("export", help="Hasse diagram of a lattice")
    e.add_argument("family")
    common(e, default_format="dot")
    e.add_argument("--kind", choices=("iota", "kappa"), default="iota")
    e.add_argument("--noncrossing", action="store_true")
    e.set_defaults(func=cmd_export, name=None)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "verb", None):
            raise UsageError("oillab: a verb is required")
        if args.verb == "sequence" and args.n_max is None:
            args.n_max = args.n if args.n is not None else 10
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        text, code = args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        print(parser.format_usage(), end="", file=sys.stderr)
        return EXIT_USAGE
    except SizeLimitExceeded as exc:
        print(f"oillab: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, ValueError) as exc:
        print(f"oillab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OilLabError as exc:
        # the inequality could not be certified (precondition or invariant failure)
        print(f"oillab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VIOLATED
    sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
