import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oillab.errors import InputError, NotStrict
from oillab.lattice import check_distributive, check_lattice_axioms, check_modular
from oillab.orderpoly import (
    LabeledPoset,
    enriched_key,
    enriched_value,
    enumerate_p_partitions,
    enumerate_tableaux,
    finite_difference,
    op_certificate,
    order_poly_value,
    ppartition_lattice,
    schur_certificate,
    schur_q_poly,
    schur_value,
    shape_poset,
    ssyt_lattice,
)
from oillab.qpoly import QPoly

from oracles import brute_enriched, brute_p_partitions, hook_content

FIG2 = LabeledPoset(3, ((2, 1), (2, 3)))


@st.composite
def labeled_posets(draw, max_p=4):
    p = draw(st.integers(1, max_p))
    order = draw(st.permutations(range(1, p + 1)))
    rel = tuple((order[i], order[j]) for i in range(p) for j in range(i + 1, p) if draw(st.booleans()))
    return LabeledPoset(p, rel)


def test_fig2_counts():
    assert order_poly_value(FIG2, 1) == 0
    assert order_poly_value(FIG2, 3) == 8
    assert len(brute_p_partitions(3, FIG2.relations, 3)) == 8
    assert ppartition_lattice(FIG2, 3).size == 8


def test_chain_counts():
    chain = LabeledPoset(2, ((1, 2),))
    assert order_poly_value(chain, 2) == 3
    assert order_poly_value(LabeledPoset(2, ((2, 1),)), 2) == 1
    singleton = LabeledPoset(1, ())
    assert [order_poly_value(singleton, n) for n in range(4)] == [0, 1, 2, 3]


@given(labeled_posets(), st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_ordinary_matches_brute_force(P, n):
    assert enumerate_p_partitions(P, n) == sorted(brute_p_partitions(P.p, P.relations, n))


@given(labeled_posets(3), st.integers(1, 2))
@settings(max_examples=40, deadline=None)
def test_enriched_matches_brute_force(P, n):
    got = enumerate_p_partitions(P, n, enriched=True)
    assert set(got) == set(brute_enriched(P.p, P.relations, n))
    assert len(got) == order_poly_value(P, n, enriched=True)


def test_enriched_keys():
    order = [enriched_value(k) for k in range(1, 7)]
    assert order == [-1, 1, -2, 2, -3, 3]
    assert all(enriched_value(enriched_key(v)) == v for v in order)
    with pytest.raises(InputError):
        enriched_key(0)


def test_json_round_trip():
    assert LabeledPoset.from_json(FIG2.to_json()).covers == FIG2.covers
    assert json.loads(FIG2.to_json()) == {"p": 3, "covers": [[2, 1], [2, 3]]}
    with pytest.raises(InputError):
        LabeledPoset(2, ((1, 3),))


def test_polynomial_degree():
    # Ω_P(n) is a polynomial of degree p: the (p+1)-st difference vanishes
    vals = [order_poly_value(FIG2, n) for n in range(8)]
    assert set(finite_difference(vals, 4)) == {0}
    assert set(finite_difference(vals, 3)) != {0}


@pytest.mark.parametrize("enriched", [False, True])
def test_lattices_are_distributive(enriched):
    rng = random.Random(3)
    for _ in range(10):
        p = rng.randint(1, 4)
        rel = tuple((a, b) for a, b in itertools.combinations(rng.sample(range(1, p + 1), p), 2)
                    if rng.random() < 0.4)
        L = ppartition_lattice(LabeledPoset(p, rel), 3 if not enriched else 2, enriched)
        assert check_distributive(L).holds and check_lattice_axioms(L).holds


@given(labeled_posets(), st.integers(1, 3), st.sampled_from(["ordinary", "enriched"]))
@settings(max_examples=50, deadline=None)
def test_certificate_counts(P, n, mode):
    e = mode == "enriched"
    cert = op_certificate(P, n, mode)
    brute = brute_enriched if e else brute_p_partitions
    om = [len(brute(P.p, P.relations, m)) for m in (n - 1, n, n + 1)]
    assert cert.holds and cert.direction == ">="
    assert (cert.size_I, cert.size_J, cert.intersection_size, cert.lattice_size) == (om[1], om[1], om[0], om[2])


def test_shape_poset_labels():
    P = shape_poset((2, 1))
    assert P.p == 3 and P.is_naturally_labeled() is False
    with pytest.raises(NotStrict):
        shape_poset((2, 2), shifted=True)


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (2, 1, 1), (3, 2)])
def test_schur_counts(lam):
    for n in range(1, 5):
        assert schur_value(lam, n) == hook_content(lam, n) == order_poly_value(shape_poset(lam), n)
        if hook_content(lam, n):
            assert ssyt_lattice(lam, n).size == hook_content(lam, n)


def test_shifted_tableaux_via_enriched():
    for lam in [(1,), (2,), (2, 1), (3, 1)]:
        for n in range(1, 4):
            assert schur_value(lam, n, shifted=True) == order_poly_value(shape_poset(lam, True), n, True)


def test_tableaux_are_semistandard():
    for T in enumerate_tableaux((2, 1), 3):
        assert T[(1, 1)] <= T[(1, 2)] and T[(1, 1)] < T[(2, 1)]


def test_q_poly_single_box():
    assert schur_q_poly((1,), 2) == QPoly([0, 1, 1])
    assert schur_q_poly((2, 1), 2)(1) == hook_content((2, 1), 2)


def test_q_certificate_single_box():
    # (q+q²)² ≥ q·(q+q²+q³), difference q³; J's values sit one higher, adding a factor q
    cert = schur_certificate((1,), 2, "q")
    assert cert.holds and cert.mode == "q"
    assert cert.size_I == QPoly([0, 1, 1]) and cert.size_J == QPoly([0, 0, 1, 1])
    assert cert.lhs - cert.rhs == QPoly.monomial(4)


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (2, 1, 1)])
def test_q_certificate_specializes(lam):
    for n in range(1, 4):
        q = schur_certificate(lam, n, "q")
        c = schur_certificate(lam, n)
        assert q.holds
        flat = q.specialize(1)
        assert (flat.size_I, flat.size_J, flat.intersection_size, flat.lattice_size) == \
            (c.size_I, c.size_J, c.intersection_size, c.lattice_size)


def test_sum_of_values_is_modular():
    L = ppartition_lattice(FIG2, 3)
    assert check_modular(L, L.coords.sum(axis=1).tolist()).holds


def test_empty_range_is_vacuous():
    # a 3-chain with decreasing labels needs three distinct values
    P = LabeledPoset(3, ((3, 2), (2, 1)))
    for mode in ("ordinary", "q"):
        cert = op_certificate(P, 1, mode)
        assert cert.holds and cert.method == "vacuous"
    assert op_certificate(P, 2).method != "vacuous"


def test_bad_mode():
    with pytest.raises(InputError):
        op_certificate(FIG2, 2, "weird")
    with pytest.raises(InputError):
        op_certificate(FIG2, 0)
