import json
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oillab.errors import InputError, Mismatch, TooShort, UnknownFamily
from oillab import seqlab
from oillab.seqlab import (
    SequenceRecord,
    analyze,
    closed_form,
    conjecture_av4,
    conjecture_pinnacle,
    conjecture_stirling1,
    cross_check,
    index_verdict,
    s4_patterns,
    sequence,
)

from oracles import asm, avoiders, catalan, descent_counts, motzkin, narayana, schroeder, stirling1, stirling2


def test_index_verdict():
    assert index_verdict(1, 2, 3) == "concave"
    assert index_verdict(1, 2, 5) == "convex"
    assert index_verdict(1, 2, 4) == "both"


@given(st.lists(st.integers(0, 10**30), min_size=3, max_size=12))
@settings(max_examples=100)
def test_analyze_is_exact(values):
    rep = analyze(values)
    for i in range(1, len(values) - 1):
        a, b, c = values[i - 1:i + 2]
        want = "both" if b * b == a * c else "concave" if b * b > a * c else "convex"
        assert rep.verdicts[i] == want
        assert (i in rep.vacuous) == (0 in (a, b, c))


def test_analyze_offsets_and_patterns():
    rep = analyze([1, 1, 2, 5, 14, 42], offset=3)
    assert sorted(rep.verdicts) == [4, 5, 6, 7]
    assert rep.pattern == "convex" and rep.convex and not rep.concave
    assert analyze([1, 3, 3, 1]).pattern == "concave"
    assert analyze([2, 2, 2]).pattern == "both"
    assert analyze([1, 2, 5, 6, 7]).pattern == "convex→concave"


def test_too_short():
    with pytest.raises(TooShort):
        analyze([1, 2])


def test_exports():
    rep = analyze(SequenceRecord("t", 1, [0, 1, 1, 2], "closed_form"))
    lines = rep.to_csv().splitlines()
    assert lines[0] == "name,n,value,verdict"
    assert lines[1] == "t,1,0," and lines[2] == "t,2,1,vacuous" and lines[3] == "t,3,1,convex"
    d = json.loads(rep.to_json())
    assert d["values"] == [0, 1, 1, 2] and d["offset"] == 1
    assert rep.to_json() == rep.to_json()


def test_record_validation():
    with pytest.raises(InputError):
        SequenceRecord("x", 0, [], "closed_form")
    with pytest.raises(InputError):
        SequenceRecord("x", 0, [1], "guess")


def test_closed_forms():
    for n in range(12):
        assert closed_form("catalan", n) == catalan(n)
        assert closed_form("factorial", n) == factorial(n)
        assert closed_form("binomial", n, k=3) == comb(n + 3, 3)
    assert [closed_form("asm", n) for n in range(1, 8)] == [asm(n) for n in range(1, 8)]
    assert closed_form("asm", 3) == 7 and closed_form("parking", 3) == 16
    for n in range(1, 9):
        for k in range(1, n + 1):
            assert closed_form("narayana", n, k=k) == narayana(n, k)
    with pytest.raises(UnknownFamily):
        closed_form("nope", 3)
    with pytest.raises(InputError):
        closed_form("narayana", 3)


def test_registered_sequences():
    assert sequence("dyck", 10).values == [catalan(n) for n in range(11)]
    assert sequence("motzkin", 10).values == [motzkin(n) for n in range(11)]
    assert sequence("schroeder", 8).values == [schroeder(n) for n in range(9)]
    assert sequence("stirling2", 9, k=3).values == [stirling2(n, 3) for n in range(10)]
    assert sequence("stirling1", 9, k=2).values == [stirling1(n, 2) for n in range(10)]
    assert sequence("av", 7, pattern="132").values == [avoiders(n, (1, 3, 2)) for n in range(8)]
    assert sequence("lucas", 5, l0=1, l1=2).values == [1, 2, 3, 5, 8, 13]
    rec = sequence("narayana", 6, k=2)
    assert rec.offset == 1 and rec[4] == narayana(4, 2)
    assert sequence("descent", 7, S={1, 3}).values == [descent_counts(n)[frozenset({1, 3})] for n in range(8)]
    with pytest.raises(UnknownFamily):
        sequence("zzz", 4)
    with pytest.raises(InputError):
        sequence("stirling2", 4)


@pytest.mark.parametrize("family,params,n_max", [
    ("dyck", {}, 8), ("motzkin", {}, 8), ("schroeder", {}, 6),
    ("rgf", {"k": 2}, 8), ("nc", {"k": 3}, 8), ("lucas", {"r": 2, "s": 5}, 12),
    ("staircase", {}, 8), ("middle", {}, 6),
])
def test_cross_checks(family, params, n_max):
    rep = cross_check(family, params, n_max)
    assert rep.to_dict()["agree"] and len(rep.values) == n_max - rep.offset + 1


def test_cross_check_reports_mismatch(monkeypatch):
    real = seqlab._reference
    monkeypatch.setattr(seqlab, "_reference", lambda f, p, n: real(f, p, n) + (n == 3))
    with pytest.raises(Mismatch) as exc:
        cross_check("dyck", {}, 5)
    assert exc.value.index == 3 and exc.value.actual == 5 and exc.value.expected == 6


def test_av4_small_and_threaded():
    a = conjecture_av4(7)
    b = conjecture_av4(7, threads=4)
    assert a.to_dict() == b.to_dict() and a.holds
    assert len(a.rows) == 24 == len(s4_patterns())
    row = next(r for r in a.rows if r["pattern"] == "1234")
    assert row["values"] == [avoiders(n, (1, 2, 3, 4)) for n in range(8)]


def test_stirling1_thresholds():
    rep = conjecture_stirling1(6, 40)
    assert rep.holds
    assert [r["threshold"] for r in rep.rows] == [2, 3, 5, 6, 8, 10]
    assert conjecture_stirling1(6, 40, threads=3).to_dict() == rep.to_dict()


def test_pinnacle_scan():
    scan = conjecture_pinnacle((3,), 6)
    d = scan.to_dict()
    assert d["sigma"] == [3] and [r["n"] for r in d["rows"]] == [3, 4, 5, 6]
    assert isinstance(scan.holds, bool)
