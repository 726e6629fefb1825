import itertools
import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oillab.errors import (
    CycleDetected,
    DuplicateCover,
    InputError,
    NotALattice,
    NotAnIdeal,
    NotDistributive,
    NotModular,
    PreconditionFailed,
)
from oillab.lattice import (
    GEQ,
    LEQ,
    VectorLattice,
    birkhoff,
    check_distributive,
    check_lattice_axioms,
    check_log_supermodular,
    check_modular,
    classify_ideal,
    compute_lattice,
    count_ideals,
    fkg_check,
    monotone_direction,
    oil_check,
    order_ideals,
    poset_from_covers,
    q_ideal_sum,
    q_oil_check,
    to_dot,
)
from oillab.qpoly import QPoly

from oracles import brute_lower_ideals, lattice_by_order, transitive_closure


@st.composite
def random_posets(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    perm = draw(st.permutations(range(n)))
    pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n)]
    rel = [p for p in pairs if draw(st.booleans())]
    return n, rel


def _poset(n, rel):
    return poset_from_covers([str(i) for i in range(n)], rel)


def _boolean(k):
    return birkhoff(poset_from_covers([str(i) for i in range(k)], []), name=f"B{k}")


PENTAGON = (["0", "a", "b", "c", "1"], [("0", "a"), ("a", "b"), ("0", "c"), ("b", "1"), ("c", "1")])
DIAMOND = (["0", "a", "b", "c", "1"], [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])


# --------------------------------------------------------------------------- posets


def test_cycle_rejected():
    with pytest.raises(CycleDetected):
        poset_from_covers("abc", [("a", "b"), ("b", "c"), ("c", "a")])


def test_self_loop_rejected():
    with pytest.raises(CycleDetected):
        poset_from_covers("ab", [("a", "a")])


def test_duplicate_cover_rejected():
    with pytest.raises(DuplicateCover):
        poset_from_covers("ab", [("a", "b"), ("a", "b")])


def test_unknown_label_rejected():
    with pytest.raises(InputError):
        poset_from_covers("ab", [("a", "z")])


def test_transitive_shortcut_dropped():
    P = poset_from_covers("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert sorted(map(tuple, P.covers.tolist())) == [(0, 1), (1, 2)]
    assert P.leq(0, 2) and not P.leq(2, 0)


@given(random_posets())
@settings(max_examples=80, deadline=None)
def test_order_relation_matches_closure(data):
    n, rel = data
    P = _poset(n, rel)
    closure = transitive_closure(n, rel)
    for a, b in itertools.product(range(n), repeat=2):
        assert P.leq(a, b) == (a == b or (a, b) in closure)


# --------------------------------------------------------------------------- generic lattices


def test_pentagon_is_lattice_not_distributive():
    L = compute_lattice(poset_from_covers(*PENTAGON))
    assert check_lattice_axioms(L).holds
    v = check_distributive(L)
    assert not v.holds and len(v.witness) == 3
    x, y, z = v.witness
    assert L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z))


def test_diamond_not_distributive():
    L = compute_lattice(poset_from_covers(*DIAMOND))
    assert not check_distributive(L).holds


def test_non_lattice_reports_pair():
    # two maximal elements
    with pytest.raises(NotALattice) as exc:
        compute_lattice(poset_from_covers("abc", [("a", "b"), ("a", "c")]))
    assert exc.value.pair == (1, 2)


def test_bowtie_has_no_least_upper_bound():
    P = poset_from_covers("abcdef", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"),
                                      ("b", "e"), ("c", "e"), ("d", "f"), ("e", "f")])
    with pytest.raises(NotALattice):
        compute_lattice(P)


def test_oil_refuses_non_distributive():
    L = compute_lattice(poset_from_covers(*PENTAGON))
    with pytest.raises(NotDistributive):
        oil_check(L, L.whole(), L.whole())


@given(random_posets())
@settings(max_examples=60, deadline=None)
def test_birkhoff_matches_brute_force(data):
    n, rel = data
    P = _poset(n, rel)
    L = birkhoff(P)
    ideals = brute_lower_ideals(n, rel)
    got = [frozenset(np.flatnonzero(r).tolist()) for r in L.coords]
    assert sorted(map(sorted, got)) == sorted(map(sorted, ideals))
    assert count_ideals(P) == len(ideals)
    rng = random.Random(n * 1000 + len(rel))
    for _ in range(20):
        i, j = rng.randrange(L.size), rng.randrange(L.size)
        assert got[L.meet(i, j)] == got[i] & got[j]
        assert got[L.join(i, j)] == got[i] | got[j]


@given(random_posets())
@settings(max_examples=40, deadline=None)
def test_vector_tables_match_generic_order(data):
    n, rel = data
    L = birkhoff(_poset(n, rel))
    G = compute_lattice(L.poset)
    assert np.array_equal(G.meet_table, L.meet_table)
    assert np.array_equal(G.join_table, L.join_table)
    assert check_distributive(L).holds and check_lattice_axioms(L).holds


def test_tables_match_brute_order():
    rows = [(a, b) for a in range(3) for b in range(3) if a <= b + 1]
    L = VectorLattice(rows, [str(r) for r in rows])
    meet, join = lattice_by_order(rows, lambda x, y: x[0] <= y[0] and x[1] <= y[1])
    assert L.meet_table.tolist() == meet and L.join_table.tolist() == join


def test_singleton_vector_lattice():
    L = VectorLattice([[1, 2]], ["only"])
    assert L.size == 1 and L.bottom == L.top == 0
    assert L.find([[1, 2]]).tolist() == [0]
    assert check_lattice_axioms(L).holds


def test_order_ideals_sorted_by_size():
    P = _poset(4, [(0, 1), (2, 3)])
    rows = order_ideals(P)
    sizes = rows.sum(axis=1).tolist()
    assert sizes == sorted(sizes) and sizes[0] == 0 and sizes[-1] == 4


def test_join_prime_method_in_middle_band():
    L = _boolean(11)
    assert L.size == 2048
    v = check_distributive(L)
    assert v.holds and v.method == "join-prime"


def test_sampled_method_above_dense_cap():
    L = _boolean(13)
    v = check_distributive(L)
    assert v.holds and v.method == "sampled"


def test_distributive_verdict_cached():
    L = _boolean(3)
    assert check_distributive(L) is check_distributive(L)


# --------------------------------------------------------------------------- ideals and certificates


def test_classify_ideal():
    L = _boolean(2)  # ∅, {0}, {1}, {0,1}
    assert classify_ideal(L, [0]) == "lower"
    assert classify_ideal(L, [3]) == "upper"
    assert classify_ideal(L, [1]) == "neither"
    assert classify_ideal(L, range(4)) == "both"


def test_not_an_ideal_rejected():
    L = _boolean(2)
    with pytest.raises(NotAnIdeal):
        oil_check(L, L.lower_ideal([1]), L.whole())


def test_oil_boolean_square():
    # B2: I = ↓{0}, J = ↓{1}: 2·2 ≤ 1·4
    L = _boolean(2)
    c = L.coords
    I = L.lower_ideal(c[:, 1] == 0)
    J = L.lower_ideal(c[:, 0] == 0)
    cert = oil_check(L, I, J)
    assert (cert.size_I, cert.size_J, cert.intersection_size, cert.lattice_size) == (2, 2, 1, 4)
    assert cert.direction == LEQ and cert.holds and cert.lhs == 4 and cert.rhs == 4


def test_oil_mixed_kinds_reverse():
    L = _boolean(3)
    c = L.coords
    cert = oil_check(L, L.lower_ideal(c[:, 0] == 0), L.upper_ideal(c[:, 1] == 1))
    assert cert.direction == GEQ and cert.holds


@given(random_posets(5), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_oil_on_principal_ideals_holds(data, seed):
    n, rel = data
    L = birkhoff(_poset(n, rel))
    rng = random.Random(seed)
    a, b = rng.randrange(L.size), rng.randrange(L.size)
    ka, kb = rng.choice(["lower", "upper"]), rng.choice(["lower", "upper"])
    assert oil_check(L, L.principal(a, ka), L.principal(b, kb)).holds


def test_certificate_json_round_trip():
    L = _boolean(3)
    cert = oil_check(L, L.principal(3), L.principal(5))
    d = json.loads(cert.to_json(sort_keys=True))
    assert d["verdict"] == "holds" and d["lhs"] == cert.lhs and d["rhs"] == cert.rhs
    assert "witness" not in d


# --------------------------------------------------------------------------- FKG


def test_fkg_reproduces_oil_with_indicators():
    L = birkhoff(_poset(4, [(0, 1), (0, 2), (3, 2)]))
    c = L.coords
    I = L.lower_ideal(c[:, 1] == 0)
    J = L.upper_ideal(c[:, 3] == 1)
    oil = oil_check(L, I, J)
    fkg = fkg_check(L, [1] * L.size, I.members.astype(int), J.members.astype(int))
    assert (fkg.size_I, fkg.size_J, fkg.intersection_size, fkg.lattice_size) == \
        (oil.size_I, oil.size_J, oil.intersection_size, oil.lattice_size)
    assert fkg.direction == oil.direction


def test_fkg_exact_rationals():
    L = _boolean(2)
    mu = [Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)]  # product measure
    f = [0, 1, 0, 1]
    g = [0, 0, 1, 1]
    cert = fkg_check(L, mu, f, g)
    assert cert.holds and cert.lhs == cert.rhs  # independent coordinates


def test_fkg_rejects_non_monotone():
    L = _boolean(2)
    with pytest.raises(PreconditionFailed):
        fkg_check(L, [1, 1, 1, 1], [0, 1, 0, 0], [0, 0, 0, 1])


def test_fkg_rejects_bad_measure():
    L = _boolean(2)
    assert not check_log_supermodular(L, [1, 2, 2, 1]).holds
    with pytest.raises(PreconditionFailed):
        fkg_check(L, [1, 2, 2, 1], [0, 0, 0, 1], [0, 0, 0, 1])


def test_fkg_rejects_floats():
    L = _boolean(1)
    with pytest.raises(InputError):
        fkg_check(L, [0.5, 0.5], [0, 1], [0, 1])


def test_monotone_direction():
    L = _boolean(2)
    assert monotone_direction(L, [0, 1, 1, 2]) == "increasing"
    assert monotone_direction(L, [2, 1, 1, 0]) == "decreasing"
    assert monotone_direction(L, [1, 1, 1, 1]) == "constant"
    assert monotone_direction(L, [0, 1, 0, 0]) is None


# --------------------------------------------------------------------------- q-analogue


def test_q_oil_specializes_to_counts():
    L = _boolean(3)
    r = L.coords.sum(axis=1).tolist()
    c = L.coords
    I, J = L.lower_ideal(c[:, 0] == 0), L.lower_ideal(c[:, 2] == 0)
    q = q_oil_check(L, r, I, J)
    assert q.holds and q.size_I == QPoly([1, 2, 1])
    flat = q.specialize(1)
    oil = oil_check(L, I, J)
    assert (flat.size_I, flat.size_J, flat.intersection_size, flat.lattice_size) == \
        (oil.size_I, oil.size_J, oil.intersection_size, oil.lattice_size)


def test_q_requires_modular_rank():
    L = _boolean(2)
    assert not check_modular(L, [0, 1, 1, 3]).holds
    with pytest.raises(NotModular):
        q_ideal_sum(L, [0, 1, 1, 3], [0])


def test_q_ideal_sum():
    L = _boolean(2)
    assert q_ideal_sum(L, [0, 1, 1, 2], range(4)) == QPoly([1, 2, 1])


# --------------------------------------------------------------------------- export


def test_dot_boolean_square():
    text = to_dot(_boolean(2), "B2")
    assert text.startswith('digraph "B2" {')
    assert text.count("->") == 4 and text.count("[label=") == 4
    assert text == to_dot(_boolean(2), "B2")
