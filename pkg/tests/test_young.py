import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oillab.errors import InputError, NotComparable
from oillab.lattice import check_distributive, check_lattice_axioms, compute_lattice, poset_from_covers
from oillab.young import (
    Partition,
    contains,
    interval_elements,
    interval_lattice,
    interval_size,
    shift_partition,
    skew_interval_lattice,
    staircase,
    young_certificate,
)

from oracles import catalan, young_interval_count

partitions = st.lists(st.integers(0, 3), min_size=0, max_size=3).map(lambda p: tuple(sorted(p, reverse=True)))


def test_partition_validation():
    with pytest.raises(InputError):
        Partition((1, 2))
    with pytest.raises(InputError):
        Partition((2, -1))
    assert str(Partition.parse("(3, 1, 0)")) == "3,1,0"
    assert Partition.parse("∅").parts == ()
    assert Partition((2, 1, 0)).stripped().parts == (2, 1)


def test_containment_and_shift():
    assert contains((2, 1), (3, 1, 1))
    assert not contains((2, 2), (3, 1))
    assert shift_partition((2, 1, 0), 2).parts == (4, 3, 2)


def test_interval_requires_containment():
    with pytest.raises(NotComparable):
        interval_elements((3,), (2, 2))


@given(partitions, st.integers(0, 3))
@settings(max_examples=60, deadline=None)
def test_interval_counts(lam, n):
    mu = shift_partition(lam, n).parts
    want = young_interval_count(lam, mu)
    assert interval_size(lam, mu) == want
    assert len(interval_elements(lam, mu)) == want


def test_staircase_gives_catalan():
    for n in range(1, 11):
        assert interval_size((), staircase(n)) == catalan(n)


def test_interval_lattice_hasse():
    L = interval_lattice((1,), (2, 2))
    rows = L.coords.tolist()
    rel = [(i, j) for i, j in itertools.permutations(range(L.size), 2)
           if all(a <= b for a, b in zip(rows[i], rows[j]))]
    G = compute_lattice(poset_from_covers(L.labels, rel))
    assert sorted(map(tuple, G.poset.covers.tolist())) == sorted(map(tuple, L.covers.tolist()))
    assert check_distributive(L).holds and check_lattice_axioms(L).holds


@pytest.mark.parametrize("lam", [(1,), (2, 1), (3, 1, 1), (2, 2), (1, 1, 1), (3, 2, 1)])
def test_certificate_counts(lam):
    for n in range(1, 5):
        cert = young_certificate(lam, n=n)
        sizes = [young_interval_count(lam, shift_partition(lam, m).parts) for m in (n - 1, n, n + 1)]
        assert cert.direction == ">=" and cert.holds
        assert (cert.size_I, cert.size_J) == (sizes[1], sizes[1])
        assert cert.intersection_size == sizes[0] and cert.lattice_size == sizes[2]


def test_zero_padding_changes_the_interval():
    # padding adds free rows below λ
    plain = young_certificate((2,), n=1)
    padded = young_certificate((2,), k=2, n=1)
    assert plain.lattice_size == 3
    assert padded.lattice_size == young_interval_count((2, 0), (4, 2)) == 9
    assert padded.holds


def _skew_pairs(outer, inner, n):
    # shifts move listed parts only; padding rows stay empty
    k = max(len(outer), len(inner))
    ranges = lambda p: [range(v, v + n + 1) for v in p] + [range(0, 1)] * (k - len(p))
    betas = [b for b in itertools.product(*ranges(outer)) if all(x >= y for x, y in zip(b, b[1:]))]
    alphas = [a for a in itertools.product(*ranges(inner)) if all(x >= y for x, y in zip(a, a[1:]))]
    return sum(1 for a in alphas for b in betas if all(x <= y for x, y in zip(a, b)))


@pytest.mark.parametrize("outer,inner", [((2, 1), (1,)), ((3, 2), (1, 1)), ((2, 2), (2,))])
def test_skew_interval(outer, inner):
    for n in range(1, 4):
        L = skew_interval_lattice(outer, inner, n)
        assert L.size == _skew_pairs(outer, inner, n)
        assert check_distributive(L).holds
        cert = young_certificate(outer, n=n, inner=inner)
        assert cert.holds and cert.intersection_size == _skew_pairs(outer, inner, n - 1)


def test_certificate_rejects_n_zero():
    with pytest.raises(InputError):
        young_certificate((1,), n=0)
