import pytest

from ncstone import catalog, duality as du, groupoid as gpd, invsemi as isg
from ncstone.groupoid import GroupoidFunctor


def pf(s, name):
    return du.PrimeFilter(s, s[name])


def test_prime_filter_counts(i2):
    assert len(du.prime_filters(i2)) == 4
    assert len(du.prime_filters(catalog.semigroup("GZ(Z2)"))) == 2
    assert len(du.prime_filters(catalog.semigroup("I_3"))) == 9
    census = du.filter_census(i2)
    assert (len(census.filters), len(census.proper), len(census.prime), len(census.ultra)) == (7, 6, 4, 4)


def test_filter_operations(i2):
    a = pf(i2, "[1->2]")
    assert du.filter_d(a) == pf(i2, "[1->1]")
    assert du.filter_r(a) == pf(i2, "[2->2]")
    assert du.filter_inv(a) == pf(i2, "[2->1]")
    assert du.filter_product(a, pf(i2, "[1->1]")) == a
    assert du.filter_product(pf(i2, "[2->1]"), a) == pf(i2, "[1->1]")
    assert du.filter_product(a, pf(i2, "[2->1]")) == pf(i2, "[2->2]")
    assert du.filter_product(a, a) is None
    assert a.members() == {i2["[1->2]"], i2["[1->2,2->1]"]}
    with pytest.raises(ValueError):
        du.filter_product(a, pf(catalog.semigroup("I_1"), "[1->1]"))


def test_filter_operations_match_set_level(i3):
    for A in du.prime_filters(i3):
        M = A.members()
        assert du.filter_d(A).members() == du.up_closure(i3, du.set_d(i3, M))
        assert du.filter_r(A).members() == du.up_closure(i3, du.set_r(i3, M))
        assert du.filter_inv(A).members() == du.set_inverse(i3, M)
        assert du.coset_law_holds(i3, M)
        for B in du.prime_filters(i3):
            C = du.filter_product(A, B)
            expect = du.set_filter_product(i3, M, B.members())
            assert (C.members() if C is not None else None) == expect


def test_stone_groupoid_shapes(i2, rook):
    assert gpd.find_groupoid_isomorphism(du.stone_groupoid(i2), gpd.pair_groupoid(2)) is not None
    g = du.stone_groupoid(rook)
    assert g.size == 8
    assert gpd.find_groupoid_isomorphism(g, catalog.groupoid("Comp(2,Z2,2)")) is not None
    with pytest.raises(ValueError):
        du.stone_groupoid(catalog.semigroup("Chain(3)"))


def test_u_set_calculus():
    for key in ("I_2", "Rook(2,Z2)", "Sub(I_3,1)"):
        s = catalog.semigroup(key)
        g = du.stone_groupoid(s)
        U = {a: frozenset(du.u_indices(s, g, a)) for a in range(s.size)}
        assert U[s.zero] == frozenset()
        for a in range(s.size):
            assert U[int(s.inv[a])] == gpd.subset_inv(g, U[a])
            for b in range(s.size):
                assert U[s.prod(a, b)] == gpd.subset_mul(g, U[a], U[b])
                assert (U[a] <= U[b]) == bool(s.leq[a, b])
                j = s.join(a, b)
                if j is not None:
                    assert U[j] == U[a] | U[b]
        assert {x.generator for x in du.u_set(s, s.zero).members} == set()


def test_alpha_and_beta_on_catalog():
    for key in catalog.SEMIGROUPS:
        s = catalog.semigroup(key)
        iso = du.alpha(s)
        assert iso.target.size == s.size
    for key in catalog.GROUPOIDS:
        g = catalog.groupoid(key)
        assert du.beta(g).target.size == g.size


def test_morphism_predicates():
    got = {m.name: (du.is_proper_morphism(m), du.is_weakly_meet_preserving(m)) for m in catalog.morphisms()}
    assert got["collapse:GZ(Z2)->I_1"] == (True, False)
    assert got["corner:I_1->I_2"] == (False, True)
    assert got["forget:Rook(2,Z2)->I_2"] == (True, False)
    assert got["pr1:I_2xI_2"] == (True, True)
    a, b, t = du.wmp_failure(catalog.collapse_group())
    s = catalog.semigroup("GZ(Z2)")
    assert s.meet(a, b) == s.zero and t != catalog.semigroup("I_1").zero


def test_bad_morphism_rejected(i2):
    bad = du.SemigroupMorphism(i2, i2, tuple([i2["[1->1]"]] * i2.size))
    assert bad.law_failure() is not None
    with pytest.raises(ValueError):
        bad.check()


def test_dual_of_projection_and_round_trips():
    theta = catalog.projection("I_2", "I_2", 0)
    assert du.is_callitic(theta)
    star = du.dual_morphism(theta)
    assert gpd.is_covering_functor(star)
    assert star.source.size == 4 and star.target.size == 8
    assert du.morphism_round_trip(theta)
    assert du.functor_round_trip(star)


def test_non_callitic_duals_fail():
    with pytest.raises(ValueError):
        du.dual_morphism(catalog.corner_inclusion())
    with pytest.raises(ValueError):
        du.dual_morphism(catalog.collapse_group())


def test_duals_are_contravariant():
    theta = catalog.projection("I_2", "I_2", 0)
    psi = catalog.conjugation(2)
    both = psi.compose(theta)
    gs, gm, gt = (du.stone_groupoid(x) for x in (theta.source, theta.target, psi.target))
    lhs = du.dual_morphism(both, gs, gt)
    rhs = du.dual_morphism(theta, gs, gm).compose(du.dual_morphism(psi, gm, gt))
    assert lhs.table == rhs.table


def test_all_callitic_catalog_morphisms_round_trip():
    for m in catalog.morphisms():
        if du.is_callitic(m):
            assert gpd.is_covering_functor(du.dual_morphism(m)), m.name
            assert du.morphism_round_trip(m), m.name


def _forget_labels():
    g, p = catalog.groupoid("Comp(2,Z2,2)"), gpd.pair_groupoid(2)
    pos = {(x, y): i for i, (_, x, _, y) in enumerate(p.labels)}
    return GroupoidFunctor(g, p, tuple(pos[(x, y)] for (_, x, _, y) in g.labels))


def test_functor_round_trip_on_inclusion():
    big = catalog.groupoid("Comp(2,Z2,2)+Pair(1)")
    incl = GroupoidFunctor(catalog.groupoid("Comp(2,Z2,2)"), big, tuple(range(8)))
    assert du.functor_round_trip(incl)
    with pytest.raises(ValueError):
        du.dual_functor(_forget_labels())


def test_wmp_iff_ideal_induced():
    seen = set()
    for m in catalog.morphisms():
        w = du.is_weakly_meet_preserving(m)
        assert w == du.is_ideal_induced(m), m.name
        seen.add(w)
    assert seen == {True, False}


def test_quotient_examples():
    s = catalog.semigroup("I_2xI_2")
    ideals = isg.additive_ideals(s)
    sizes = sorted(len(i) for i in ideals)
    assert sizes == [1, 7, 7, 49]
    small = next(i for i in ideals if len(i) == 7)
    q, nat = du.quotient(s, small)
    assert q.size == 7 and isg.find_isomorphism(q, catalog.semigroup("I_2")) is not None
    assert du.is_callitic(nat) and du.is_ideal_induced(nat)
    assert du.quotient(s, {s.zero})[0].size == 49
    assert du.quotient(s, range(s.size))[0].size == 1
    with pytest.raises(ValueError):
        du.ideal_congruence(s, {s.zero, 1})


def test_separation_witness(i3):
    a, b = i3["[1->1]"], i3["[1->1,2->2]"]
    w = du.separation_witness(i3, a, b)
    assert b in w and a not in w
    with pytest.raises(ValueError):
        du.separation_witness(i3, b, a)
    for x in range(i3.size):
        for y in range(i3.size):
            if not i3.leq[y, x]:
                f = du.separation_witness(i3, x, y)
                assert y in f and x not in f


def test_correspondences_and_contrasts():
    for key in catalog.SEMIGROUPS:
        rep = du.verify_correspondences(catalog.semigroup(key), key)
        assert all(c["holds"] for c in rep["correspondences"]), key
    rook = du.verify_correspondences(catalog.semigroup("Rook(2,Z2)"))["predicates"]
    assert not rook["fundamental"] and not rook["effective"]
    prod = du.verify_correspondences(catalog.semigroup("I_2xI_2"))["predicates"]
    assert not prod["0-simplifying"] and not prod["minimal"]
    i3 = du.verify_correspondences(catalog.semigroup("I_3"))["predicates"]
    assert all(i3[k] for k in ("fundamental", "effective", "0-simplifying", "minimal", "basic", "principal"))

