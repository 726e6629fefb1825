"""The compiled and numpy backends must agree bit for bit, witnesses included."""
import itertools
import random

import numpy as np
import pytest

from oillab import kernels
from oillab.lattice import _csr, _words, birkhoff, compute_lattice, poset_from_covers
from oillab.errors import NotALattice

from oracles import random_relations

py = kernels.python_backend
cy = kernels.compiled_backend
pytestmark = pytest.mark.skipif(cy is None, reason="compiled extension not built")

RNG = random.Random(11)


def _posets(count, max_n):
    for _ in range(count):
        n = RNG.randint(1, max_n)
        rel = random_relations(RNG, n, RNG.choice([0.1, 0.3, 0.6]))
        yield poset_from_covers([str(i) for i in range(n)], rel)


def _lattices():
    """Distributive lattices plus the pentagon, the diamond and random lattices."""
    out = [birkhoff(P) for P in _posets(15, 6)]
    for covers in ([(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
                   [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]):
        out.append(compute_lattice(poset_from_covers([str(i) for i in range(5)], covers)))
    for P in _posets(150, 8):
        # bound it so that most random posets become lattices
        n = P.n
        rel = [tuple(c) for c in P.covers.tolist()]
        rel += [(n, i) for i in range(n)] + [(i, n + 1) for i in range(n)]
        try:
            out.append(compute_lattice(poset_from_covers([str(i) for i in range(n + 2)], rel)))
        except NotALattice:
            pass
    return out


LATTICES = _lattices()


def test_some_random_lattices_fail_distributivity():
    assert any(cy.first_bad_triple(L.meet_table, L.join_table) is not None for L in LATTICES)


def test_down_closure():
    for P in _posets(100, 70):
        indptr, indices = P.lower_csr
        a = py.down_closure(P.topo, indptr, indices, _words(P.n))
        b = cy.down_closure(P.topo, indptr, indices, _words(P.n))
        assert (np.asarray(a) == np.asarray(b)).all()


def test_glb_table():
    for P in _posets(100, 10):
        n = P.n
        pos = np.empty(n, dtype=np.int64)
        pos[P.topo] = np.arange(n)
        a, b = pos[P.covers[:, 0]], pos[P.covers[:, 1]]
        indptr, indices = _csr(n, b, a)
        down = py.down_closure(np.arange(n, dtype=np.int64), indptr, indices, _words(n))
        ta, *ra = py.glb_table(down)
        tb, *rb = cy.glb_table(down)
        assert ra == rb
        if ra[0] == 0:
            assert (np.asarray(ta) == np.asarray(tb)).all()


def test_triples_and_associativity():
    for L in LATTICES:
        M, J = L.meet_table, L.join_table
        assert py.first_bad_triple(M, J) == cy.first_bad_triple(M, J)
        assert py.first_nonassociative(M) == cy.first_nonassociative(M) is None
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(2, 9))
        T = rng.integers(0, n, size=(n, n)).astype(np.int32)
        U = rng.integers(0, n, size=(n, n)).astype(np.int32)
        assert py.first_bad_triple(T, U) == cy.first_bad_triple(T, U)
        assert py.first_nonassociative(T) == cy.first_nonassociative(T)


def test_join_prime_and_bounds():
    for L in LATTICES:
        n = L.size
        ji = L.poset.lower_cover_counts == 1
        bits = np.packbits(np.pad(ji, (0, _words(n) * 64 - n)), bitorder="little").view(np.uint64)
        bits = np.ascontiguousarray(bits)
        down = L.poset.down
        J, M = L.join_table, L.meet_table
        assert py.first_join_prime_failure(J, down, bits) == cy.first_join_prime_failure(J, down, bits)
        assert py.first_bound_mismatch(M, down) == cy.first_bound_mismatch(M, down) is None
        broken = np.array(M)
        broken[n - 1, 0] = broken[0, n - 1] = n - 1
        assert py.first_bound_mismatch(broken, down) == cy.first_bound_mismatch(broken, down)


def test_minmax_tables():
    rng = np.random.default_rng(2)
    for _ in range(30):
        k = int(rng.integers(1, 4))
        radix = rng.integers(2, 4, size=k)
        rows = np.array(sorted({tuple(int(rng.integers(0, r)) for r in radix) for _ in range(12)}),
                        dtype=np.int64)
        weights = np.cumprod(np.concatenate([[1], radix[:-1]])).astype(np.int64)
        keys = rows @ weights
        order = np.argsort(keys).astype(np.int64)
        sorted_keys = np.ascontiguousarray(keys[order])
        a = py.minmax_tables(rows, weights, sorted_keys, order)
        b = cy.minmax_tables(rows, weights, sorted_keys, order)
        for x, y in zip(a, b):
            assert (np.asarray(x) == np.asarray(y)).all()


def test_permutations():
    for n in range(8):
        a, b = py.all_permutations(n), np.asarray(cy.all_permutations(n))
        assert (a == b).all()
        assert [tuple(r) for r in a.tolist()] == list(itertools.permutations(range(n)))


PATTERNS = [((0, 2, 1), (0, 0), (0, 0)), ((1, 0, 2), (1, 0), (0, 0)), ((1, 0, 2), (0, 0), (1, 0)),
            ((2, 0, 3, 1), (0, 1, 0), (0, 1, 0)), ((0, 1), (0,), (1,)), ((0,), (), ())]


@pytest.mark.parametrize("pattern,pos,val", PATTERNS)
def test_pattern_kernels(pattern, pos, val):
    pat = np.asarray(pattern, dtype=np.int8)
    pb, vb = np.asarray(pos, dtype=np.uint8), np.asarray(val, dtype=np.uint8)
    for n in range(7):
        perms = np.ascontiguousarray(py.all_permutations(n))
        assert (py.pattern_mask(perms, pat, pb, vb) == np.asarray(cy.pattern_mask(perms, pat, pb, vb))).all()
        assert py.count_avoiders(n, pat, pb, vb) == cy.count_avoiders(n, pat, pb, vb)
