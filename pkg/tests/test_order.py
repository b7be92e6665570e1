import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from ncstone import order as o
from ncstone.order import FinPoset


def ps(m):
    return o.powerset_poset(m)


def diamond():
    # 0 < x, y < 1
    return FinPoset([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]], bottom=0)


def test_rejects_non_orders():
    with pytest.raises(ValueError, match="reflexive"):
        FinPoset([[0, 1], [0, 1]])
    with pytest.raises(ValueError, match="antisymmetric"):
        FinPoset([[1, 1], [1, 1]])
    with pytest.raises(ValueError, match="transitive"):
        FinPoset([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    with pytest.raises(ValueError, match="below everything"):
        FinPoset([[1, 0], [0, 1]], bottom=0)


def test_closure_up_examples():
    p = ps(2)
    assert o.closure_up(p, [0b01]) == {0b01, 0b11}
    assert o.closure_up(p, []) == frozenset()
    assert o.closure_up(o.chain(3), [1]) == {1, 2}
    with pytest.raises(IndexError):
        o.closure_up(p, [9])


def test_is_filter_examples():
    p = ps(2)
    assert o.is_filter(p, {0b01, 0b11})
    assert not o.is_filter(p, {0b01, 0b10, 0b11})
    assert o.is_filter(o.chain(3), {2})
    with pytest.raises(ValueError):
        o.is_filter(p, set())


def test_filter_minimum():
    p = ps(2)
    assert o.filter_minimum(p, {0b01, 0b11}) == 0b01
    assert o.filter_minimum(p, range(4)) == 0
    assert o.filter_minimum(o.chain(3), {1, 2}) == 1
    with pytest.raises(ValueError):
        o.filter_minimum(p, {0b01, 0b10, 0b11})


def test_ultrafilters_examples():
    assert [f.generator for f in o.ultrafilters(ps(3))] == [1, 2, 4]
    assert [f.generator for f in o.ultrafilters(o.chain(3))] == [1]
    assert [f.generator for f in o.ultrafilters(diamond())] == [1, 2]
    with pytest.raises(ValueError):
        o.ultrafilters(FinPoset([[1, 0], [0, 1]]))


def test_exel_examples():
    p = ps(2)
    assert o.exel_criterion(p, o.closure_up(p, [0b01]))
    assert not o.exel_criterion(p, {0b11})
    d = diamond()
    assert o.exel_criterion(d, d.up(1))
    with pytest.raises(ValueError):
        o.exel_criterion(p, {0b01, 0b10, 0b11})


def test_exel_rejects_non_semilattice():
    # two maximal elements above two incomparable atoms: no meet of the tops
    rel = [[1, 1, 1, 1, 1], [0, 1, 0, 1, 1], [0, 0, 1, 1, 1], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
    p = FinPoset(rel, bottom=0)
    assert not p.is_meet_semilattice()
    with pytest.raises(ValueError):
        o.exel_criterion(p, {3})


def test_meet_table_matches_scan():
    d = diamond()
    assert d.meet(1, 2) == 0
    assert d.meet(1, 3) == 1
    p = ps(3)
    for x in range(8):
        for y in range(8):
            assert p.meet(x, y) == x & y


def test_json_round_trip():
    p = diamond()
    q = FinPoset.from_json(p.to_json())
    assert (q.leq == p.leq).all() and q.bottom == 0


def test_upsets_count_free_distributive():
    # antichains of P({1..n}): the Dedekind numbers 3, 6, 20, 168, 7581
    assert [sum(1 for _ in o.all_upsets(ps(m))) for m in range(1, 6)] == [3, 6, 20, 168, 7581]


def posets(max_size=7):
    rng = random.Random(3)
    out = []
    for _ in range(40):
        out.append(o.random_meet_semilattice(rng, points=5, max_size=max_size))
    return out


def test_principality_and_bruteforce_ultrafilters():
    for p in posets(12) + [ps(3), diamond(), o.chain(5)]:
        for f in o.all_filters(p):
            assert f == p.up(o.filter_minimum(p, f))
        atoms = [f.generator for f in o.ultrafilters(p)]
        assert sorted(f.generator for f in o.ultrafilters_bruteforce(p)) == atoms
        fs = o.all_filters(p)
        maximal = sorted(o.filter_minimum(p, f) for f in fs if o.is_maximal_proper(p, f, fs))
        assert maximal == atoms


def test_exel_on_four_point_families():
    count = 0
    for p in o.intersection_closed(4, dedupe=True):
        fs = o.all_filters(p)
        for f in fs:
            if p.bottom not in f:
                assert o.exel_criterion(p, f) == o.is_maximal_proper(p, f, fs)
                count += 1
    assert count > 1000


def test_semilattice_census_small():
    # lattices with n + 1 elements: 1, 1, 2, 5, 15, 53, 222, 1078
    c = Counter(n for n, _ in o.meet_semilattices(8))
    assert [c[n] for n in range(1, 9)] == [1, 1, 2, 5, 15, 53, 222, 1078]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_exel_random_semilattices(seed):
    p = o.random_meet_semilattice(random.Random(seed))
    fs = o.all_filters(p)
    for f in fs:
        if p.bottom not in f:
            assert o.exel_criterion(p, f) == o.is_maximal_proper(p, f, fs)
