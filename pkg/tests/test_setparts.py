import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oillab.errors import Infeasible, InputError, InvalidRGF, NotStandardForm
from oillab.lattice import check_distributive, check_lattice_axioms, compute_lattice, poset_from_covers
from oillab.setparts import (
    RGF,
    SetPartition,
    compare_multisets,
    decompose,
    enumerate_rgfs,
    feasible_fm,
    is_noncrossing,
    narayana,
    narayana_certificate,
    reconstruct_nc,
    recompose,
    rgf_combine,
    rgf_convert,
    rgf_lattice,
    stirling2,
    stirling2_certificate,
)

from oracles import brute_rgfs, catalan, is_noncrossing_blocks
from oracles import narayana as narayana_oracle
from oracles import stirling2 as stirling2_oracle


def _fr(w):
    seen, F, R = set(), [], []
    for i, v in enumerate(w, start=1):
        if v in seen:
            R.append(v)
        else:
            seen.add(v)
            F.append(i)
    return F, R


def test_worked_conversion():
    assert str(rgf_convert("12359/46/78")) == "111212331"
    assert str(rgf_convert(RGF.parse("111212331"))) == "12359/46/78"


def test_invalid_rgf_message():
    with pytest.raises(InvalidRGF, match=r"ρ_7=4 but 1\+max\(111212\)=3"):
        RGF.parse("1112124")
    with pytest.raises(InvalidRGF):
        RGF((2, 1))


def test_standard_form():
    assert str(SetPartition.parse("46/12359/78")) == "12359/46/78"
    with pytest.raises(NotStandardForm):
        rgf_convert("46/12359/78", strict=True)
    with pytest.raises(InputError):
        SetPartition.parse("12/23")


@given(st.integers(1, 7).flatmap(lambda n: st.lists(st.integers(1, n), min_size=n, max_size=n)))
@settings(max_examples=200, deadline=None)
def test_round_trips(raw):
    # turn any word into an RGF by first-occurrence relabeling
    relabel = {}
    w = tuple(relabel.setdefault(v, len(relabel) + 1) for v in raw)
    rho = RGF(w)
    assert rgf_convert(rgf_convert(rho)) == rho
    d = decompose(rho)
    assert (list(d.F), list(d.R)) == _fr(w)
    assert recompose(d.F, d.R) == w
    assert is_noncrossing(rho) == is_noncrossing_blocks(w)


def test_enumeration_counts():
    for n in range(1, 9):
        for k in range(1, n + 1):
            words = [r.word for r in enumerate_rgfs(n, k)]
            assert words == sorted(brute_rgfs(n, k))
            assert len(words) == stirling2(n, k) == stirling2_oracle(n, k)
            nc = [r.word for r in enumerate_rgfs(n, k, noncrossing=True)]
            assert nc == [w for w in words if is_noncrossing_blocks(w)]
            assert len(nc) == narayana(n, k) == narayana_oracle(n, k)


def test_narayana_sums_to_catalan():
    for n in range(1, 11):
        assert sum(narayana(n, k) for k in range(1, n + 1)) == catalan(n)


def test_small_lattice_sizes():
    assert rgf_lattice(4, 2).size == 7
    assert rgf_lattice(4, 2, noncrossing=True).size == 6


def test_meets_and_joins():
    assert str(rgf_combine("1221", "1212")) == "1211"
    assert str(rgf_combine("1221", "1122", noncrossing=True)) == "1122"


def _order(rows, noncrossing):
    def leq(a, b):
        Fa, Ra = _fr(a)
        Fb, Rb = _fr(b)
        if noncrossing:
            Ra, Rb = sorted(Ra), sorted(Rb)
        return all(x >= y for x, y in zip(Fa, Fb)) and all(x <= y for x, y in zip(Ra, Rb))
    return leq


@pytest.mark.parametrize("noncrossing", [False, True])
@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (5, 3), (6, 3), (6, 4)])
def test_lattice_matches_generic_order(n, k, noncrossing):
    L = rgf_lattice(n, k, noncrossing)
    words = [tuple(int(c) for c in L.label(i)) for i in range(L.size)]
    leq = _order(words, noncrossing)
    rel = [(i, j) for i, j in itertools.permutations(range(L.size), 2) if leq(words[i], words[j])]
    G = compute_lattice(poset_from_covers(L.labels, rel))
    assert sorted(map(tuple, G.poset.covers.tolist())) == sorted(map(tuple, L.covers.tolist()))
    assert (G.meet_table == L.meet_table).all() and (G.join_table == L.join_table).all()
    for i, j in itertools.combinations(range(L.size), 2):
        assert str(rgf_combine(L.label(i), L.label(j), "meet", noncrossing)) == L.label(L.meet(i, j))
        assert str(rgf_combine(L.label(i), L.label(j), "join", noncrossing)) == L.label(L.join(i, j))
    assert check_distributive(L).holds and check_lattice_axioms(L).holds


def test_reconstruction_example():
    assert str(reconstruct_nc((1, 3, 7), Counter({1: 3, 2: 2, 3: 1}))) == "112221331"
    assert str(reconstruct_nc((1, 3, 7), {1: 3, 2: 2, 3: 1})) == "112221331"


def test_infeasible():
    assert not feasible_fm((1, 4), [2, 2])
    with pytest.raises(Infeasible):
        reconstruct_nc((1, 4), [2, 2])


def test_noncrossing_uniqueness_small():
    for n in range(1, 7):
        for k in range(1, n + 1):
            groups = {}
            for w in brute_rgfs(n, k):
                F, R = _fr(w)
                groups.setdefault((tuple(F), tuple(sorted(R))), []).append(w)
            for (F, M), ws in groups.items():
                nc = [w for w in ws if is_noncrossing_blocks(w)]
                assert len(nc) == 1 and feasible_fm(F, M)
                assert reconstruct_nc(F, M).word == nc[0]


def test_compare_multisets():
    assert compare_multisets([1, 2], [2, 1]) == "="
    assert compare_multisets([1, 1], [1, 2]) == "<"
    assert compare_multisets([1, 3], [2, 2]) is None


def test_certificates():
    for n in range(2, 9):
        for k in range(1, n + 1):
            s = stirling2_certificate(n, k)
            assert s.holds and s.direction == ">="
            assert (s.size_I, s.intersection_size, s.lattice_size) == \
                (stirling2_oracle(n, k), stirling2_oracle(n - 1, k), stirling2_oracle(n + 1, k))
            c = narayana_certificate(n, k)
            assert c.holds and c.direction == ">="
            assert (c.size_I, c.intersection_size, c.lattice_size) == \
                (narayana_oracle(n, k), narayana_oracle(n - 1, k), narayana_oracle(n + 1, k))


def test_certificate_bounds():
    with pytest.raises(InputError):
        stirling2_certificate(3, 4)
    with pytest.raises(InputError):
        narayana_certificate(1, 1)
