from itertools import product

import pytest

from ncstone import boolalg as ba
from ncstone.boolalg import AtomMap, BoolHom, BooleanStructure, FinBoolAlg


def test_axioms_hold():
    for k in (1, 2, 4):
        assert ba.verify_axioms(FinBoolAlg(k)).ok
    rep = ba.verify_axioms(FinBoolAlg(6))
    assert rep.mode == "sampled" and rep.ok


def test_axioms_forced_failure():
    b = FinBoolAlg(2)
    bad = BooleanStructure(b.size, b.meet, b.meet, b.comp, b.zero, b.one)
    rep = ba.verify_axioms(bad)
    assert rep.first_failure() == ("B3", (1,))


def test_ring_examples():
    b = FinBoolAlg(3)
    x, y = ba.from_subsets([1, 2, 3], {1}), ba.from_subsets([1, 2, 3], {1, 2})
    assert ba.to_ring(b, x, y)[0] == ba.from_subsets([1, 2, 3], {2})
    assert all(ba.to_ring(b, v, v)[0] == 0 for v in b.elements())
    assert ba.ring_round_trip(b)


def test_ring_round_trips_both_ways():
    for k in range(5):
        assert ba.ring_round_trip(FinBoolAlg(k))
        assert ba.ring_round_trip_from_ring(ba.boolean_ring_of_subsets(k))


def test_idempotents_mod_n():
    six = ba.idempotent_algebra(6)
    assert six.values == [0, 1, 3, 4]
    i3, i4 = six.values.index(3), six.values.index(4)
    assert six.names[six.join(i3, i4)] == "1"
    assert ba.verify_axioms(six).ok
    assert ba.idempotent_algebra(5).values == [0, 1]
    alg, iso = ba.canonicalize(six)
    assert alg.k == 2 and sorted(iso) == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        ba.idempotent_algebra(1)


def test_atoms_below():
    b = FinBoolAlg(3)
    assert ba.atoms_below(b, 0) == frozenset()
    assert ba.atoms_below(b, b.top) == frozenset(b.atoms)
    assert ba.atoms_below(b, 0b011) == {0b001, 0b010}
    for k in range(1, 6):
        assert ba.atoms_below_is_iso(FinBoolAlg(k))


def test_sharp_example():
    src, tgt = FinBoolAlg(2), FinBoolAlg(3)
    theta = ba.hom_from_atoms(src, tgt, [0b001, 0b110])
    assert theta.is_hom()
    assert ba.hom_to_atom_map(theta).images == (0, 1, 1)


def test_sharp_identity_and_constant():
    b = FinBoolAlg(3)
    ident = BoolHom(b, b, tuple(b.elements()))
    assert ba.hom_to_atom_map(ident).images == (0, 1, 2)
    const = ba.atom_map_to_hom(AtomMap(b, FinBoolAlg(2), (1, 1)))
    assert all(const(x) == (0b11 if x & 0b010 else 0) for x in b.elements())


def test_sharp_rejects_non_hom():
    b = FinBoolAlg(2)
    bad = BoolHom(b, b, (0, 1, 1, 3))
    with pytest.raises(ValueError, match="join|meet"):
        ba.hom_to_atom_map(bad)


def test_sharp_flat_round_trips_and_functoriality():
    algs = [FinBoolAlg(k) for k in range(1, 4)]
    for s, t in product(algs, repeat=2):
        homs = ba.all_homs(s, t)
        assert len(homs) == s.k ** t.k
        for h in homs:
            assert h.is_hom()
            assert ba.atom_map_to_hom(ba.hom_to_atom_map(h)) == h
        for imgs in product(range(s.k), repeat=t.k):
            a = AtomMap(s, t, imgs)
            assert ba.hom_to_atom_map(ba.atom_map_to_hom(a)) == a
    for a, b, c in product(algs, repeat=3):
        for th in ba.all_homs(a, b):
            for ps in ba.all_homs(b, c):
                left = ba.hom_to_atom_map(ps.compose(th)).images
                ts, pss = ba.hom_to_atom_map(th), ba.hom_to_atom_map(ps)
                assert left == tuple(ts(pss(f)) for f in range(c.k))


def test_ultrafilters_and_characters():
    b2 = FinBoolAlg(2)
    f = ba.principal_filter(b2, 0b01)
    chi = ba.ultrafilter_char(b2, f)
    assert chi(0b01) == 1 and chi(0b10) == 0 and chi(b2.top) == 1
    for k in range(1, 5):
        b = FinBoolAlg(k)
        ultra = [ba.principal_filter(b, a) for a in b.atoms]
        assert [ba.char_to_ultrafilter(ba.ultrafilter_char(b, u)) for u in ultra] == ultra
        chars = [h for h in ba.all_homs(b, FinBoolAlg(1))]
        assert sorted(map(sorted, (ba.char_to_ultrafilter(h) for h in chars))) == sorted(map(sorted, ultra))
    with pytest.raises(ValueError):
        ba.ultrafilter_char(b2, {b2.top})


def test_prime_iff_atom():
    b2 = FinBoolAlg(2)
    assert ba.prime_iff_atom(b2, 0b01) == (True, True)
    assert ba.prime_iff_atom(b2, 0b11) == (False, False)
    assert ba.prime_iff_atom(FinBoolAlg(1), 1) == (True, True)
    with pytest.raises(ValueError):
        ba.prime_iff_atom(b2, 0)


def test_prime_equals_ultra_bruteforce():
    for k in range(1, 5):
        b = FinBoolAlg(k)
        proper = [f for f in ba.all_proper_filters(b) if 0 not in f]
        prime = [f for f in proper if ba.is_prime_filter(b, f)]
        ultra = [f for f in proper if not any(f < g for g in proper)]
        assert sorted(map(sorted, prime)) == sorted(map(sorted, ultra))
        assert len(ultra) == k


def test_separation():
    for k in range(1, 5):
        b = FinBoolAlg(k)
        for a, c in product(range(1, b.size), repeat=2):
            if a != c:
                u = ba.separating_ultrafilter(b, a, c)
                assert b.is_atom(u) and (b.leq(u, a) != b.leq(u, c))


def test_json():
    b = FinBoolAlg(3)
    assert FinBoolAlg.from_json(b.to_json()) == b
    h = ba.hom_from_atoms(FinBoolAlg(1), b, [b.top])
    assert '"map": [0, 7]' in h.to_json()
