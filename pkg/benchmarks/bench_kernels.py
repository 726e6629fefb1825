"""Compiled vs pure-Python kernel timings.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json]

Inputs are built through the library so that they match production shapes.
Each kernel runs on both backends; results are checked for equality before
timing so a fast wrong answer cannot show up as a speedup.
"""
import argparse
import json
import sys
import timeit

import numpy as np

from oillab import kernels
from oillab.lattice import _csr, _words
from oillab.orderpoly import LabeledPoset, ppartition_lattice
from oillab.paths import path_lattice
from oillab.perms import BivincularPattern, parse_pattern


def _same(a, b):
    if isinstance(a, tuple) and a and isinstance(a[0], np.ndarray):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return bool((np.asarray(a) == np.asarray(b)).all())
    return a == b


def cases():
    L = path_lattice("dyck", 7)  # 429 elements: exhaustive triple range
    M, J = L.meet_table, L.join_table
    big = ppartition_lattice(LabeledPoset(4, ((1, 2),)), 4, enriched=True)  # 2048 elements
    bigJ = big.join_table
    n = big.size
    ji = big.poset.lower_cover_counts == 1
    bits = np.ascontiguousarray(
        np.packbits(np.pad(ji, (0, _words(n) * 64 - n)), bitorder="little").view(np.uint64))
    codec = big._codec
    var = np.ascontiguousarray(big._var - codec.lo)
    P = big.poset
    indptr, indices = P.lower_csr
    pos = np.empty(L.size, dtype=np.int64)
    pos[L.poset.topo] = np.arange(L.size)
    a, b = pos[L.poset.covers[:, 0]], pos[L.poset.covers[:, 1]]
    lp, li = _csr(L.size, b, a)
    ldown = kernels.python_backend.down_closure(np.arange(L.size, dtype=np.int64), lp, li, _words(L.size))
    perms8 = np.ascontiguousarray(kernels.python_backend.all_permutations(8))
    pat = parse_pattern("2|31-").kernel_args()
    cls = BivincularPattern((1, 3, 2, 4)).kernel_args()
    return [
        ("down_closure", (P.topo, indptr, indices, _words(n)), f"|P|={n}"),
        ("glb_table", (ldown,), f"n={L.size}"),
        ("first_bad_triple", (M, J), f"n={L.size}"),
        ("first_nonassociative", (M,), f"n={L.size}"),
        ("first_bound_mismatch", (M, L.poset.down), f"n={L.size}"),
        ("first_join_prime_failure", (bigJ, P.down, bits), f"n={n}"),
        ("minmax_tables", (var, codec.weights, np.ascontiguousarray(codec.sorted),
                           np.ascontiguousarray(codec.order)), f"n={n}"),
        ("pattern_mask", (perms8, *pat), "8! rows, 2|31-"),
        ("count_avoiders", (8, *cls), "n=8, 1324"),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    cy, py = kernels.compiled_backend, kernels.python_backend
    if cy is None:
        print("compiled backend unavailable; build the extension first", file=sys.stderr)
        return 1
    rows = []
    for name, inputs, size in cases():
        f_py, f_cy = getattr(py, name), getattr(cy, name)
        if not _same(f_py(*inputs), f_cy(*inputs)):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        t_py = min(timeit.repeat(lambda: f_py(*inputs), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: f_cy(*inputs), number=1, repeat=args.repeat))
        rows.append({"kernel": name, "input": size, "python_s": t_py, "compiled_s": t_cy,
                     "speedup": t_py / t_cy if t_cy else float("inf")})
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'kernel':26} {'input':16} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for r in rows:
        print(f"{r['kernel']:26} {r['input']:16} {r['python_s']:10.4f} {r['compiled_s']:10.4f} "
              f"{r['speedup']:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
