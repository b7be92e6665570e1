"""Prime filters, the groupoid they form, and the two round trips.

For a finite Boolean inverse semigroup every prime filter is the up-set
of an atom, so a ``PrimeFilter`` is stored as its generating atom.  The
set-level definitions are kept alongside as oracles for small hosts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional

import numpy as np

from . import groupoid as gpd
from . import invsemi as isg
from .groupoid import FinGroupoid, GroupoidFunctor, kb
from .invsemi import FinInvSemi
from .order import FinPoset, all_upsets

ORACLE_LIMIT = 15


@dataclass(frozen=True, eq=False)
class PrimeFilter:
    """``generator``-up in ``host``.  Filters on different hosts never compare equal."""

    host: FinInvSemi
    generator: int

    def __eq__(self, other):
        return isinstance(other, PrimeFilter) and self.host is other.host and self.generator == other.generator

    def __hash__(self):
        return hash(self.generator)

    def __repr__(self):
        return f"PrimeFilter({self.host.names[self.generator]})"

    def members(self) -> frozenset:
        return frozenset(np.nonzero(self.host.leq[self.generator])[0].tolist())

    def __contains__(self, a) -> bool:
        return bool(self.host.leq[self.generator, a])


# -- set-level oracles -------------------------------------------------------

def up_closure(s: FinInvSemi, xs) -> frozenset:
    xs = list(xs)
    if not xs:
        return frozenset()
    return frozenset(np.nonzero(s.leq[xs].any(axis=0))[0].tolist())


def set_product(s: FinInvSemi, A, B) -> frozenset:
    A, B = list(A), list(B)
    if not A or not B:
        return frozenset()
    return frozenset(np.unique(s.mul[np.ix_(A, B)]).tolist())


def set_inverse(s: FinInvSemi, A) -> frozenset:
    return frozenset(int(s.inv[a]) for a in A)


def set_d(s: FinInvSemi, A) -> frozenset:
    return up_closure(s, set_product(s, set_inverse(s, A), A))


def set_r(s: FinInvSemi, A) -> frozenset:
    return up_closure(s, set_product(s, A, set_inverse(s, A)))


def set_filter_product(s: FinInvSemi, A, B) -> Optional[frozenset]:
    if set_d(s, A) != set_r(s, B):
        return None
    return up_closure(s, set_product(s, A, B))


def _is_filter_set(s: FinInvSemi, F: frozenset) -> bool:
    if not F:
        return False
    mask = np.zeros(s.size, dtype=bool)
    mask[list(F)] = True
    members = sorted(F)
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if not (s.leq[:, a] & s.leq[:, b] & mask).any():
                return False
    return True


def _is_prime_set(s: FinInvSemi, F: frozenset) -> bool:
    for a, b in product(range(s.size), repeat=2):
        j = s.join_table[a, b]
        if s.compat[a, b] and j >= 0 and j in F and a not in F and b not in F:
            return False
    return True


@dataclass
class FilterCensus:
    filters: list
    proper: list
    prime: list
    ultra: list


def filter_census(s: FinInvSemi) -> FilterCensus:
    """Every filter of ``s`` from a scan of all up-closed subsets."""
    if s.size > ORACLE_LIMIT * 3:
        raise ValueError("filter census limited to small hosts")
    p = FinPoset(s.leq, bottom=s.zero)
    filters = [u for u in all_upsets(p) if _is_filter_set(s, u)]
    proper = [f for f in filters if s.zero not in f]
    prime = [f for f in proper if _is_prime_set(s, f)]
    ultra = [f for f in proper if not any(f < g for g in proper)]
    return FilterCensus(filters, proper, prime, ultra)


def coset_law_holds(s: FinInvSemi, A: frozenset) -> bool:
    """``A = (a d(A))-up`` for every ``a`` in ``A``."""
    dA = set_d(s, A)
    return all(up_closure(s, set_product(s, [a], dA)) == A for a in A)


# -- prime filters -----------------------------------------------------------

def prime_filters(s: FinInvSemi, oracle: bool = True) -> list[PrimeFilter]:
    """Prime filters, one per atom, in atom index order.

    For hosts with at most ``ORACLE_LIMIT`` elements the answer is also
    recomputed from the definitions and compared.
    """
    isg.require_boolean(s)
    gens = isg.atoms(s)
    out = [PrimeFilter(s, a) for a in gens]
    if oracle and s.size <= ORACLE_LIMIT:
        census = filter_census(s)
        by_atoms = {f.members() for f in out}
        if set(census.prime) != by_atoms or set(census.ultra) != by_atoms:
            raise AssertionError("atom prime filters disagree with the brute-force census")
    return out


def filter_d(A: PrimeFilter) -> PrimeFilter:
    return PrimeFilter(A.host, int(A.host.d[A.generator]))


def filter_r(A: PrimeFilter) -> PrimeFilter:
    return PrimeFilter(A.host, int(A.host.r[A.generator]))


def filter_inv(A: PrimeFilter) -> PrimeFilter:
    return PrimeFilter(A.host, int(A.host.inv[A.generator]))


def filter_product(A: PrimeFilter, B: PrimeFilter) -> Optional[PrimeFilter]:
    """``(AB)-up`` when ``d(A) = r(B)``, else ``None``."""
    if A.host is not B.host:
        raise ValueError("filters live on different hosts")
    s = A.host
    if filter_d(A) != filter_r(B):
        return None
    ab = s.prod(A.generator, B.generator)
    if ab == s.zero or s.leq[:, ab].sum() != 2:
        raise AssertionError("product of composable atoms is not an atom")
    return PrimeFilter(s, ab)


def stone_groupoid(s: FinInvSemi) -> FinGroupoid:
    """The groupoid of prime filters; element ``i`` is the ``i``-th atom."""
    pf = prime_filters(s)
    pos = {A.generator: i for i, A in enumerate(pf)}
    n = len(pf)
    mul = np.full((n, n), gpd.UNDEF, dtype=np.int64)
    for i, A in enumerate(pf):
        for j, B in enumerate(pf):
            C = filter_product(A, B)
            if C is not None:
                mul[i, j] = pos[C.generator]
    inv = [pos[filter_inv(A).generator] for A in pf]
    return FinGroupoid(mul, inv, names=[s.names[A.generator] for A in pf],
                       labels=[A.generator for A in pf])


@dataclass(frozen=True)
class USet:
    element: int
    members: frozenset  # of PrimeFilter


def u_set(s: FinInvSemi, a) -> USet:
    return USet(int(a), frozenset(PrimeFilter(s, x) for x in isg.atoms(s) if s.leq[x, a]))


def u_indices(s: FinInvSemi, g: FinGroupoid, a) -> tuple:
    """The set of prime filters containing ``a``, as sorted indices into ``stone_groupoid(s)``."""
    return tuple(i for i, x in enumerate(g.labels) if s.leq[x, a])


# -- the two isomorphisms ----------------------------------------------------

@dataclass
class Iso:
    source: object
    target: object
    forward: tuple
    backward: tuple


def alpha(s: FinInvSemi, g: Optional[FinGroupoid] = None, t: Optional[FinInvSemi] = None) -> Iso:
    """``a -> U_a`` from ``s`` onto the local bisections of its prime-filter groupoid."""
    g = g if g is not None else stone_groupoid(s)
    t = t if t is not None else kb(g)
    pos = {lab: i for i, lab in enumerate(t.labels)}
    fwd = tuple(pos[u_indices(s, g, a)] for a in range(s.size))
    # inverse: join the atoms generating the filters in a bisection
    back = []
    for lab in t.labels:
        v = s.join_all(g.labels[i] for i in lab)
        if v is None:
            raise AssertionError("atoms of a bisection are not compatible")
        back.append(v)
    back = tuple(back)
    if len(set(fwd)) != s.size or t.size != s.size:
        raise AssertionError(f"alpha is not a bijection: |S|={s.size}, |KB(G(S))|={t.size}")
    if not isg.is_morphism_table(s, t, fwd):
        raise AssertionError("alpha is not a homomorphism")
    if any(back[fwd[a]] != a for a in range(s.size)):
        raise AssertionError("joining atoms does not invert alpha")
    return Iso(s, t, fwd, back)


def beta(g: FinGroupoid, t: Optional[FinInvSemi] = None, h: Optional[FinGroupoid] = None) -> Iso:
    """``x -> ({x})-up`` from ``g`` onto the prime filters of its bisection monoid."""
    t = t if t is not None else kb(g)
    h = h if h is not None else stone_groupoid(t)
    pos = {gen: i for i, gen in enumerate(h.labels)}
    single = {lab: i for i, lab in enumerate(t.labels)}
    fwd = tuple(pos[single[(x,)]] for x in range(g.size))
    if len(set(fwd)) != g.size or h.size != g.size:
        raise AssertionError("beta is not a bijection")
    f = GroupoidFunctor(g, h, fwd)
    if not f.is_functor():
        raise AssertionError(f"beta is not a functor: {f.law_failure()}")
    back = [0] * g.size
    for x, y in enumerate(fwd):
        back[y] = x
    return Iso(g, h, fwd, tuple(back))


# -- morphisms ---------------------------------------------------------------

@dataclass(frozen=True)
class SemigroupMorphism:
    source: FinInvSemi
    target: FinInvSemi
    table: tuple
    name: str = ""

    def __call__(self, a):
        return self.table[a]

    def law_failure(self):
        s, t = self.source, self.target
        m = np.asarray(self.table, dtype=np.int64)
        if m.shape != (s.size,) or m.min() < 0 or m.max() >= t.size:
            return ("shape", None)
        if m[s.zero] != t.zero:
            return ("zero", s.zero)
        bad = np.argwhere(m[s.mul] != t.mul[m[:, None], m[None, :]])
        if len(bad):
            return ("product", tuple(int(x) for x in bad[0]))
        pa, pb = np.nonzero(s.compat)
        j = s.join_table[pa, pb]
        tj = t.join_table[m[pa], m[pb]]
        bad = np.nonzero(m[j] != tj)[0]
        if len(bad):
            return ("join", (int(pa[bad[0]]), int(pb[bad[0]])))
        return None

    def check(self):
        bad = self.law_failure()
        if bad is not None:
            raise ValueError(f"not a morphism: {bad[0]} fails at {bad[1]}")
        return self

    def compose(self, other: "SemigroupMorphism") -> "SemigroupMorphism":
        """``self`` after ``other``."""
        return SemigroupMorphism(other.source, self.target, tuple(self.table[x] for x in other.table))


def identity_morphism(s: FinInvSemi) -> SemigroupMorphism:
    return SemigroupMorphism(s, s, tuple(range(s.size)), "id")


def is_proper_morphism(theta: SemigroupMorphism) -> bool:
    """Every target element is the join of the elements below it that lie
    under some image."""
    theta.check()
    t = theta.target
    img = sorted(set(theta.table))
    under = t.leq[:, img].any(axis=1)
    for x in range(t.size):
        parts = np.nonzero(under & t.leq[:, x])[0]
        if t.join_all(parts) != x:
            return False
    return True


def wmp_failure(theta: SemigroupMorphism):
    """A triple ``(a, b, t)`` with ``t <= theta(a), theta(b)`` but ``t`` under no
    ``theta(c)`` for ``c <= a, b``; ``None`` if there is none."""
    s, t = theta.source, theta.target
    m = np.asarray(theta.table)
    for a in range(s.size):
        for b in range(a, s.size):
            lower_t = t.leq[:, m[a]] & t.leq[:, m[b]]
            cs = np.nonzero(s.leq[:, a] & s.leq[:, b])[0]
            covered = t.leq[:, m[cs]].any(axis=1)
            bad = np.nonzero(lower_t & ~covered)[0]
            if len(bad):
                return a, b, int(bad[0])
    return None


def is_weakly_meet_preserving(theta: SemigroupMorphism) -> bool:
    theta.check()
    return wmp_failure(theta) is None


def is_callitic(theta: SemigroupMorphism) -> bool:
    return is_proper_morphism(theta) and is_weakly_meet_preserving(theta)


def dual_morphism(theta: SemigroupMorphism, gs: Optional[FinGroupoid] = None,
                  gt: Optional[FinGroupoid] = None) -> GroupoidFunctor:
    """Preimage of prime filters: a functor from the prime-filter groupoid of
    the target to that of the source."""
    s, t = theta.source, theta.target
    gs = gs if gs is not None else stone_groupoid(s)
    gt = gt if gt is not None else stone_groupoid(t)
    pos = {a: i for i, a in enumerate(gs.labels)}
    m = np.asarray(theta.table)
    table = []
    for b in gt.labels:
        pre = np.nonzero(t.leq[b, m])[0]
        if len(pre) == 0:
            raise ValueError(f"preimage of {t.names[b]}-up is empty; morphism is not proper")
        mins = [x for x in pre if s.leq[x, pre].all()]
        if not mins:
            raise ValueError(f"preimage of {t.names[b]}-up has no minimum; not weakly meet preserving")
        if mins[0] not in pos:
            raise ValueError(f"preimage of {t.names[b]}-up is generated by non-atom {s.names[mins[0]]}")
        table.append(pos[int(mins[0])])
    f = GroupoidFunctor(gt, gs, tuple(table))
    if not f.is_functor():
        raise AssertionError(f"preimage map is not a functor: {f.law_failure()}")
    return f


def dual_functor(phi: GroupoidFunctor, kg: Optional[FinInvSemi] = None,
                 kh: Optional[FinInvSemi] = None) -> SemigroupMorphism:
    """``U -> phi^-1(U)`` from bisections of the target to bisections of the source."""
    if not gpd.is_covering_functor(phi):
        raise ValueError("functor is not a covering")
    g, h = phi.source, phi.target
    kg = kg if kg is not None else kb(g)
    kh = kh if kh is not None else kb(h)
    pos = {lab: i for i, lab in enumerate(kg.labels)}
    table = []
    for U in kh.labels:
        Us = set(U)
        pre = tuple(x for x in range(g.size) if phi(x) in Us)
        if pre not in pos:
            raise AssertionError("preimage of a bisection is not a bisection")
        table.append(pos[pre])
    return SemigroupMorphism(kh, kg, tuple(table)).check()


def morphism_round_trip(theta: SemigroupMorphism) -> bool:
    """``(theta*)*`` agrees with ``theta`` transported along both alphas."""
    s, t = theta.source, theta.target
    gs, gt = stone_groupoid(s), stone_groupoid(t)
    ks, kt = kb(gs), kb(gt)
    a_s, a_t = alpha(s, gs, ks), alpha(t, gt, kt)
    star = dual_morphism(theta, gs, gt)
    back = dual_functor(star, kg=kt, kh=ks)
    return all(back(u) == a_t.forward[theta(a_s.backward[u])] for u in range(ks.size))


def functor_round_trip(phi: GroupoidFunctor) -> bool:
    """``(phi*)*`` agrees with ``phi`` transported along both betas."""
    g, h = phi.source, phi.target
    kg, kh = kb(g), kb(h)
    gg, gh = stone_groupoid(kg), stone_groupoid(kh)
    b_g, b_h = beta(g, kg, gg), beta(h, kh, gh)
    star = dual_functor(phi, kg, kh)
    back = dual_morphism(star, gs=gh, gt=gg)
    return all(back(x) == b_h.forward[phi(b_g.backward[x])] for x in range(gg.size))


# -- congruences from additive ideals ----------------------------------------

@dataclass
class CongruenceByIdeal:
    host: FinInvSemi
    ideal: frozenset
    classes: list            # sorted list of sorted tuples
    class_of: tuple          # element -> class index


def _partition(n, related) -> tuple[list, tuple]:
    class_of = [-1] * n
    classes = []
    for a in range(n):
        if class_of[a] >= 0:
            continue
        members = [b for b in range(n) if related[a, b]]
        for b in members:
            class_of[b] = len(classes)
        classes.append(tuple(members))
    return classes, tuple(class_of)


def ideal_congruence(s: FinInvSemi, ideal) -> CongruenceByIdeal:
    """``a ~ b`` iff some ``c <= a, b`` has ``a \\ c`` and ``b \\ c`` in the ideal."""
    ideal = frozenset(ideal) | {s.zero}
    if not isg.is_additive_ideal(s, ideal):
        raise ValueError("not an additive ideal")
    n = s.size
    in_i = np.zeros(n, dtype=bool)
    in_i[list(ideal)] = True
    # rest[c, a] = in_i[a \ c] for c <= a
    rest = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for c in s.down(a):
            rest[c, a] = in_i[isg.complement_below(s, int(c), a)] if c != a else True
    rel = (rest.astype(np.int32).T @ rest.astype(np.int32)) > 0
    if not (np.array_equal(rel, rel.T) and rel.diagonal().all()):
        raise AssertionError("relation is not reflexive and symmetric")
    if not np.array_equal(((rel.astype(np.int32) @ rel.astype(np.int32)) > 0), rel):
        raise AssertionError("relation is not transitive")
    classes, class_of = _partition(n, rel)
    cong = CongruenceByIdeal(s, ideal, classes, class_of)
    kernel = frozenset(classes[class_of[s.zero]])
    if kernel != ideal:
        raise AssertionError("kernel of the congruence differs from the ideal")
    _check_congruence(s, class_of)
    return cong


def _check_congruence(s: FinInvSemi, class_of):
    c = np.asarray(class_of)
    k = c.max() + 1
    table = np.full((k, k), -1, dtype=np.int64)
    for a in range(s.size):
        for b in range(s.size):
            v = c[s.mul[a, b]]
            if table[c[a], c[b]] not in (-1, v):
                raise AssertionError("relation is not compatible with multiplication")
            table[c[a], c[b]] = v
    return table


def quotient(s: FinInvSemi, ideal) -> tuple[FinInvSemi, SemigroupMorphism]:
    cong = ideal_congruence(s, ideal)
    c = np.asarray(cong.class_of)
    table = _check_congruence(s, cong.class_of)
    inv = [int(c[s.inv[cls[0]]]) for cls in cong.classes]
    names = [s.names[max(cls, key=lambda x: (s.leq[:, x].sum(), -x))] for cls in cong.classes]
    q = FinInvSemi(table, inv, int(c[s.zero]), names=names)
    return q, SemigroupMorphism(s, q, tuple(int(x) for x in c), "quotient").check()


def kernel_congruence(theta: SemigroupMorphism) -> np.ndarray:
    m = np.asarray(theta.table)
    return m[:, None] == m[None, :]


def is_ideal_induced(theta: SemigroupMorphism) -> bool:
    """Whether ``theta`` identifies exactly the pairs of ``eps_I`` for ``I`` its kernel."""
    s = theta.source
    ker = frozenset(a for a in range(s.size) if theta(a) == theta.target.zero)
    cong = ideal_congruence(s, ker)
    c = np.asarray(cong.class_of)
    return bool(np.array_equal(c[:, None] == c[None, :], kernel_congruence(theta)))


def separation_witness(s: FinInvSemi, a, b) -> PrimeFilter:
    """A prime filter containing ``b`` but not ``a``."""
    if s.leq[b, a]:
        raise ValueError(f"{s.names[b]} is below {s.names[a]}")
    for x in isg.atoms(s):
        if s.leq[x, b] and not s.leq[x, a]:
            return PrimeFilter(s, x)
    raise AssertionError("no separating atom")


# -- the property dictionary -------------------------------------------------

def verify_correspondences(s: FinInvSemi, name: str = "") -> dict:
    g = stone_groupoid(s)
    left = {
        "fundamental": isg.is_fundamental(s),
        "0-simplifying": isg.is_zero_simplifying(s),
        "basic": isg.is_basic(s),
        "semisimple": isg.is_semisimple(s),
        "meet-semigroup": isg.is_meet_semigroup(s),
    }
    right = {
        "effective": gpd.is_effective_discrete(g),
        "minimal": gpd.is_minimal_discrete(g),
        "principal": gpd.is_principal(g),
        "discrete": True,
        "hausdorff": gpd.is_hausdorff_discrete(g),
    }
    pairs = [("fundamental", "effective", False), ("0-simplifying", "minimal", False),
             ("basic", "principal", False), ("semisimple", "discrete", True),
             ("meet-semigroup", "hausdorff", True)]
    corr = [{"lhs": l, "rhs": r, "holds": left[l] == right[r], "degenerate": deg}
            for l, r, deg in pairs]
    return {"instance": name, "predicates": {**left, **right}, "correspondences": corr}
