"""Adding an identity to a Boolean inverse semigroup, and its group of units.

Two routes are provided.  The finite one adjoins an isolated identity to
the prime-filter groupoid and takes bisections again.  The symbolic one
works with finite-support partial bijections of the naturals, where the
new elements are "something on a finite set, identity elsewhere".
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import invsemi as isg
from .duality import stone_groupoid, u_indices
from .genbool import FC
from .groupoid import FinGroupoid, adjoin_identity, kb, local_bisections
from .groups import Group, find_isomorphism as find_group_isomorphism
from .invsemi import FinInvSemi


# -- finite route ------------------------------------------------------------

@dataclass
class FiniteUnitization:
    monoid: FinInvSemi
    embedding: tuple          # s-index -> monoid index
    groupoid: FinGroupoid     # prime-filter groupoid with the extra identity
    decompositions: dict      # outer element -> (e, e x e) with x = e' v exe


def unitize_finite(s: FinInvSemi) -> FiniteUnitization:
    """Bisections of the prime-filter groupoid plus one isolated identity.

    Checks that the image of ``s`` is an additive ideal and a subalgebra,
    that the new monoid has exactly twice as many elements, and that every
    new element splits as ``e' v exe``.
    """
    isg.require_boolean(s)
    g = stone_groupoid(s)
    ginf = adjoin_identity(g)
    t = kb(ginf)
    pos = {lab: i for i, lab in enumerate(t.labels)}
    emb = tuple(pos[u_indices(s, g, a)] for a in range(s.size))
    if t.size != 2 * s.size:
        raise AssertionError(f"|T| = {t.size}, expected {2 * s.size}")
    if len(set(emb)) != s.size or not isg.is_morphism_table(s, t, emb):
        raise AssertionError("embedding is not an injective homomorphism")
    image = frozenset(emb)
    if not isg.is_additive_ideal(t, image):
        raise AssertionError("image is not an additive ideal")
    if isg.subalgebra_closure(t, image) != image:
        raise AssertionError("image is not a subalgebra")
    one = t.identity()
    if one is None:
        raise AssertionError("unitization has no identity")
    inf = ginf.size - 1
    decomp = {}
    for x in range(t.size):
        if x in image:
            continue
        if inf not in t.labels[x]:
            raise AssertionError("element outside the image avoids the new identity")
        # smallest e: identities of g where x is not the identity arrow
        fixed = {a for a in t.labels[x] if ginf.is_identity(a)}
        e_lab = tuple(sorted(int(u) for u in g.identities if int(u) not in fixed))
        e = pos[e_lab]
        e_comp = isg.idempotent_difference(t, one, e)
        exe = t.prod(e, x, e)
        if e not in image or exe not in image or t.join(e_comp, exe) != x:
            raise AssertionError(f"normal form fails for {t.names[x]}")
        decomp[x] = (e, exe)
    return FiniteUnitization(t, emb, ginf, decomp)


# -- symbolic route ----------------------------------------------------------

@dataclass(frozen=True)
class FinSupportPB:
    """A partial bijection of the naturals with finite domain."""

    graph: tuple = ()

    def __post_init__(self):
        g = tuple(sorted((int(a), int(b)) for a, b in self.graph))
        src = [a for a, _ in g]
        dst = [b for _, b in g]
        if len(set(src)) != len(src) or len(set(dst)) != len(dst):
            raise ValueError("graph is not injective")
        if any(v < 0 for v in src + dst):
            raise ValueError("points must be natural numbers")
        object.__setattr__(self, "graph", g)

    @classmethod
    def of(cls, mapping) -> "FinSupportPB":
        return cls(tuple(dict(mapping).items()))

    @property
    def dom(self) -> frozenset:
        return frozenset(a for a, _ in self.graph)

    @property
    def ran(self) -> frozenset:
        return frozenset(b for _, b in self.graph)

    def as_dict(self) -> dict:
        return dict(self.graph)

    def __mul__(self, other: "FinSupportPB") -> "FinSupportPB":
        """Apply ``other`` first."""
        me = self.as_dict()
        return FinSupportPB(tuple((a, me[b]) for a, b in other.graph if b in me))

    def inverse(self) -> "FinSupportPB":
        return FinSupportPB(tuple((b, a) for a, b in self.graph))

    def restrict(self, pts) -> "FinSupportPB":
        """Keep arrows whose source is in ``pts``."""
        pts = set(pts)
        return FinSupportPB(tuple((a, b) for a, b in self.graph if a in pts))

    def corestrict(self, pts) -> "FinSupportPB":
        """Keep arrows whose target is in ``pts``."""
        pts = set(pts)
        return FinSupportPB(tuple((a, b) for a, b in self.graph if b in pts))

    def minus(self, other: "FinSupportPB") -> "FinSupportPB":
        drop = set(other.graph)
        return FinSupportPB(tuple(p for p in self.graph if p not in drop))

    def orth_join(self, other: "FinSupportPB") -> "FinSupportPB":
        if self.dom & other.dom or self.ran & other.ran:
            raise ValueError("join of non-orthogonal partial bijections")
        return FinSupportPB(self.graph + other.graph)


def ident(pts) -> FinSupportPB:
    return FinSupportPB(tuple((p, p) for p in pts))


@dataclass(frozen=True)
class Inner:
    """An element of the original semigroup: a finite partial bijection."""

    pb: FinSupportPB

    kind = "inner"


@dataclass(frozen=True)
class Outer:
    """``pb`` on the finite set ``e``, undefined on the rest of ``e``,
    identity off ``e``.  Stored with ``e`` as small as possible."""

    e: frozenset
    pb: FinSupportPB

    kind = "outer"

    def __post_init__(self):
        e = frozenset(self.e)
        if not (self.pb.dom <= e and self.pb.ran <= e):
            raise ValueError("partial bijection must live inside e")
        keep = frozenset(p for p in e if self.pb.as_dict().get(p) != p)
        object.__setattr__(self, "e", keep)
        object.__setattr__(self, "pb", self.pb.restrict(keep))


UnitizedElem = Union[Inner, Outer]


def unit() -> Outer:
    return Outer(frozenset(), FinSupportPB())


def evaluate(x: UnitizedElem, n: int) -> Optional[int]:
    if isinstance(x, Inner):
        return x.pb.as_dict().get(n)
    if n in x.e:
        return x.pb.as_dict().get(n)
    return n


def _support(x: UnitizedElem) -> set:
    pts = set(x.pb.dom | x.pb.ran)
    if isinstance(x, Outer):
        pts |= x.e
    return pts


def compose_direct(x: UnitizedElem, y: UnitizedElem) -> UnitizedElem:
    """Evaluate ``x(y(n))`` pointwise on every point either operand touches."""
    window = sorted(_support(x) | _support(y))
    out = {}
    for n in window:
        m = evaluate(y, n)
        if m is not None:
            k = evaluate(x, m)
            if k is not None:
                out[n] = k
    if isinstance(x, Outer) and isinstance(y, Outer):
        e = frozenset(n for n in window if out.get(n) != n)
        return Outer(e, FinSupportPB(tuple((a, b) for a, b in out.items() if a in e)))
    return Inner(FinSupportPB(tuple(out.items())))


def compose_formula(x: UnitizedElem, y: UnitizedElem) -> UnitizedElem:
    """The same product from the four case formulas, using only operations
    on finite partial bijections."""
    if isinstance(x, Inner) and isinstance(y, Inner):
        return Inner(x.pb * y.pb)
    if isinstance(x, Outer) and isinstance(y, Outer):
        e, f = x.e, y.e
        a = x.pb.orth_join(ident(f - e))
        b = y.pb.orth_join(ident(e - f))
        return Outer(e | f, a * b)
    if isinstance(x, Outer):
        # (b \ eb) v a1 b
        b = y.pb
        eb = b.corestrict(x.e)
        return Inner(b.minus(eb).orth_join(x.pb * b))
    a = x.pb
    af = a.restrict(y.e)
    return Inner(a.minus(af).orth_join(a * y.pb))


def compose_unitized(x: UnitizedElem, y: UnitizedElem) -> UnitizedElem:
    p, q = compose_direct(x, y), compose_formula(x, y)
    if p != q:
        raise AssertionError(f"product implementations disagree on {x!r} * {y!r}: {p!r} vs {q!r}")
    return p


def inverse_unitized(x: UnitizedElem) -> UnitizedElem:
    if isinstance(x, Inner):
        return Inner(x.pb.inverse())
    return Outer(x.e, x.pb.inverse())


def is_idempotent_unitized(x: UnitizedElem) -> bool:
    return compose_direct(x, x) == x


def is_unit_unitized(x: UnitizedElem) -> bool:
    """A permutation of ``e`` extended by the identity: a finitary permutation."""
    return isinstance(x, Outer) and x.pb.dom == x.e and x.pb.ran == x.e


def idempotent_to_fincofin(x: UnitizedElem) -> FC:
    """Idempotents are partial identities on finite or cofinite sets."""
    if not is_idempotent_unitized(x):
        raise ValueError("not an idempotent")
    if isinstance(x, Inner):
        return FC("fin", x.pb.dom)
    return FC("cofin", x.e)


def random_unitized(rng: random.Random, window: int = 10) -> UnitizedElem:
    """A random canonical element with support in ``range(window)``."""
    pts = [p for p in range(window) if rng.random() < 0.5]
    dom = [p for p in pts if rng.random() < 0.8]
    img = rng.sample(pts, len(dom)) if len(dom) <= len(pts) else []
    pb = FinSupportPB(tuple(zip(dom, img)))
    if rng.random() < 0.5:
        return Inner(pb)
    return Outer(frozenset(pts), pb)


def random_unit(rng: random.Random, window: int = 10) -> Outer:
    pts = [p for p in range(window) if rng.random() < 0.5]
    img = pts[:]
    rng.shuffle(img)
    return Outer(frozenset(pts), FinSupportPB(tuple(zip(pts, img))))


def unitized_to_json(x: UnitizedElem) -> str:
    e = sorted(x.e) if isinstance(x, Outer) else []
    return json.dumps({"kind": x.kind, "e": e, "graph": [list(p) for p in x.pb.graph]})


def unitized_from_json(text: str) -> UnitizedElem:
    data = json.loads(text)
    pb = FinSupportPB(tuple(tuple(p) for p in data["graph"]))
    if data["kind"] == "inner":
        return Inner(pb)
    if data["kind"] == "outer":
        return Outer(frozenset(data["e"]), pb)
    raise ValueError(f"unknown kind {data['kind']!r}")


# -- Clifford semigroup and group of units -----------------------------------

@dataclass
class CliffordSemigroup:
    """Union of the local unit groups ``G_e = {a : d(a) = r(a) = e}``.

    ``mul[i, j]`` multiplies after pushing both factors up to the group
    at ``d(a) v d(b)``.  Index ``i`` refers to ``elements[i]`` of ``host``.
    """

    host: FinInvSemi
    elements: tuple
    mul: np.ndarray
    inv: np.ndarray

    @property
    def size(self) -> int:
        return len(self.elements)

    def level(self, i) -> int:
        return int(self.host.d[self.elements[i]])


def push_up(s: FinInvSemi, a, f) -> int:
    """``a v (f \\ e)`` for ``a`` in ``G_e`` and ``e <= f``."""
    e = int(s.d[a])
    if not s.leq[e, f]:
        raise ValueError("target idempotent is not above")
    v = s.join(a, isg.idempotent_difference(s, f, e))
    if v is None:
        raise AssertionError("push-up join does not exist")
    return v


def clifford(s: FinInvSemi) -> CliffordSemigroup:
    """Build ``C(S)`` and check the strong semilattice laws, centrality of
    idempotents, associativity and E-unitarity."""
    isg.require_boolean(s)
    if s.identity() is None:
        raise ValueError("host must be a monoid")
    elems = tuple(a for a in range(s.size) if s.d[a] == s.r[a])
    pos = {a: i for i, a in enumerate(elems)}
    E = [int(e) for e in s.idempotents]
    for e in E:
        for a in elems:
            if s.d[a] == e and push_up(s, a, e) != a:
                raise AssertionError("push-up to the same level is not the identity")
    for e in E:
        for f in E:
            if not s.leq[e, f]:
                continue
            for g in E:
                if not s.leq[f, g]:
                    continue
                for a in elems:
                    if s.d[a] == e:
                        if push_up(s, push_up(s, a, f), g) != push_up(s, a, g):
                            raise AssertionError("push-ups do not compose")
                        b = push_up(s, a, f)
                        if s.d[b] != f or s.r[b] != f:
                            raise AssertionError("push-up leaves the local group")
    n = len(elems)
    mul = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            top = s.join(int(s.d[a]), int(s.d[b]))
            mul[i, j] = pos[s.prod(push_up(s, a, top), push_up(s, b, top))]
    inv = np.array([pos[int(s.inv[a])] for a in elems], dtype=np.int64)
    for i in range(n):
        if not np.array_equal(mul[mul[i], :], mul[i][mul]):
            raise AssertionError("C(S) product is not associative")
    c = CliffordSemigroup(s, elems, mul, inv)
    idem = [i for i in range(n) if mul[i, i] == i]
    for i in idem:
        if not np.array_equal(mul[i, :], mul[:, i]):
            raise AssertionError("idempotents of C(S) are not central")
    # E-unitary: anything above an idempotent is idempotent (e <= a iff a e = e)
    for e in idem:
        above = np.nonzero(mul[:, e] == e)[0]
        if any(mul[a, a] != a for a in above):
            raise AssertionError("C(S) is not E-unitary")
    return c


@dataclass
class UnitGroup:
    group: Group
    classes: list           # sorted tuples of C(S) indices
    class_of: tuple
    units: list             # ordinary units of the host
    iso: tuple              # units[k] -> class index


def group_of_units(s: FinInvSemi) -> UnitGroup:
    """``C(S)`` modulo compatibility, matched against the units of ``s``."""
    c = clifford(s)
    n = c.size
    idem = np.array([c.mul[i, i] == i for i in range(n)])
    compat = idem[c.mul[c.inv, :]] & idem[c.mul[:, c.inv]]
    if not np.array_equal(((compat.astype(np.int32) @ compat.astype(np.int32)) > 0), compat):
        raise AssertionError("compatibility on C(S) is not transitive")
    class_of = [-1] * n
    classes = []
    for i in range(n):
        if class_of[i] < 0:
            members = tuple(int(j) for j in np.nonzero(compat[i])[0])
            for j in members:
                class_of[j] = len(classes)
            classes.append(members)
    k = len(classes)
    table = np.full((k, k), -1, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            v = class_of[c.mul[i, j]]
            if table[class_of[i], class_of[j]] not in (-1, v):
                raise AssertionError("compatibility is not a congruence on C(S)")
            table[class_of[i], class_of[j]] = v
    grp = Group(table)
    us = isg.units(s)
    pos = {a: i for i, a in enumerate(c.elements)}
    iso = tuple(class_of[pos[u]] for u in us)
    if sorted(iso) != list(range(k)):
        raise AssertionError("units do not meet each class exactly once")
    for x in us:
        for y in us:
            if iso[us.index(s.prod(x, y))] != table[iso[us.index(x)], iso[us.index(y)]]:
                raise AssertionError("units -> classes is not a homomorphism")
    return UnitGroup(grp, classes, tuple(class_of), us, iso)


def unit_group_table(s: FinInvSemi, us) -> Group:
    pos = {u: i for i, u in enumerate(us)}
    return Group([[pos[s.prod(a, b)] for b in us] for a in us], names=[s.names[u] for u in us])


@dataclass
class FullGroupReport:
    full_group_order: int
    units_order: int
    isomorphic: bool
    bisections: list          # full bisections of the groupoid with the extra identity
    correspondence: tuple     # bisection k -> class in U(KB(g))


def units_vs_full_group(g: FinGroupoid) -> FullGroupReport:
    """Full bisections of ``g`` plus an extra identity, compared with the group
    of units of the bisection monoid of ``g``.

    A full bisection ``A`` goes to the class of ``A`` with the extra
    identity removed.
    """
    ginf = adjoin_identity(g)
    n_ids = len(ginf.identities)
    full = [b for b in local_bisections(ginf) if len(b) == n_ids]
    tinf = kb(ginf)
    pos_inf = {lab: i for i, lab in enumerate(tinf.labels)}
    full_idx = [pos_inf[b] for b in full]
    units_inf = isg.units(tinf)
    if sorted(full_idx) != sorted(units_inf):
        raise AssertionError("full bisections are not the units of the unitized monoid")
    fg = unit_group_table(tinf, full_idx)

    s = kb(g)
    ug = group_of_units(s)
    pos_s = {lab: i for i, lab in enumerate(s.labels)}
    cpos = {a: i for i, a in enumerate(clifford(s).elements)}
    inf = ginf.size - 1
    corr = tuple(ug.class_of[cpos[pos_s[tuple(x for x in b if x != inf)]]] for b in full)
    iso_ok = sorted(corr) == list(range(ug.group.order))
    if iso_ok:
        for i in range(len(full)):
            for j in range(len(full)):
                k = full_idx.index(tinf.prod(full_idx[i], full_idx[j]))
                if corr[k] != ug.group.mul(corr[i], corr[j]):
                    iso_ok = False
    if iso_ok and find_group_isomorphism(fg, ug.group) is None:
        raise AssertionError("explicit correspondence is an isomorphism but search found none")
    return FullGroupReport(fg.order, ug.group.order, iso_ok, full, corr)
