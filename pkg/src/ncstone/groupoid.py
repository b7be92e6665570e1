"""Finite groupoids, local bisections and the inverse monoid they form.

A finite groupoid is discrete as a topological groupoid, so every subset
is compact-open and the topological predicates reduce to counting.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .groups import Group, trivial_group
from .invsemi import SIZE_CAP, FinInvSemi

UNDEF = -1


class FinGroupoid:
    """Partial multiplication table with ``-1`` where a product is undefined.

    ``mul[a, b]`` is ``ab``, defined exactly when ``d(a) = r(b)``, where
    ``d(a) = a^-1 a`` and ``r(a) = a a^-1``.
    """

    def __init__(self, mul, inv, names=None, labels=None):
        m = np.array(mul, dtype=np.int64).reshape(len(inv), len(inv))
        iv = np.array(inv, dtype=np.int64).reshape(len(inv))
        n = len(iv)
        if n and (iv.min() < 0 or iv.max() >= n or m.min() < UNDEF or m.max() >= n):
            raise ValueError("table entries out of range")
        idx = np.arange(n)
        self.size = n
        self.mul = m
        self.inv = iv
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        self.labels = tuple(labels) if labels is not None else None
        self._index = {nm: i for i, nm in enumerate(self.names)}
        if n:
            if (m[iv, idx] < 0).any() or (m[idx, iv] < 0).any():
                raise ValueError("a^-1 a or a a^-1 undefined")
        self.d = m[iv, idx] if n else np.zeros(0, dtype=np.int64)
        self.r = m[idx, iv] if n else np.zeros(0, dtype=np.int64)
        self.identities = np.unique(self.d)
        self._validate()
        for arr in (m, iv, self.d, self.r, self.identities):
            arr.setflags(write=False)

    def _validate(self):
        m, iv, d, r, n = self.mul, self.inv, self.d, self.r, self.size
        if n == 0:
            return
        idx = np.arange(n)
        if not np.array_equal(np.unique(r), self.identities):
            raise ValueError("range and domain identities differ")
        # composable exactly when d(a) = r(b)
        should = d[:, None] == r[None, :]
        if not np.array_equal(m >= 0, should):
            a, b = np.argwhere((m >= 0) != should)[0]
            raise ValueError(f"product {int(a)}*{int(b)} defined iff d(a)=r(b) fails")
        a_, b_ = np.nonzero(should)
        ab = m[a_, b_]
        if not (np.array_equal(d[ab], d[b_]) and np.array_equal(r[ab], r[a_])):
            raise ValueError("d(ab) = d(b) or r(ab) = r(a) fails")
        for e in self.identities:
            if m[e, e] != e or iv[e] != e:
                raise ValueError(f"{int(e)} is not an identity")
        if not (np.array_equal(m[idx, d], idx) and np.array_equal(m[r, idx], idx)):
            raise ValueError("identity laws fail")
        if not np.array_equal(iv[iv], idx):
            raise ValueError("inverse is not an involution")
        # associativity on composable triples
        for a in range(n):
            bs = np.nonzero(should[a])[0]
            for b in bs:
                cs = np.nonzero(should[b])[0]
                if len(cs) and not np.array_equal(m[m[a, b], cs], m[a, m[b, cs]]):
                    raise ValueError(f"associativity fails at {(a, int(b))}")

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FinGroupoid(size={self.size}, identities={len(self.identities)})"

    def __getitem__(self, name) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no element named {name!r}") from None

    def defined(self, a, b) -> bool:
        return self.mul[a, b] >= 0

    def star(self, e) -> list[int]:
        """Elements with domain ``e``."""
        return np.nonzero(self.d == e)[0].tolist()

    def hom(self, e, f) -> list[int]:
        """Arrows from ``e`` to ``f``."""
        return np.nonzero((self.d == e) & (self.r == f))[0].tolist()

    def is_identity(self, a) -> bool:
        return self.d[a] == a

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        mul = [[None if v < 0 else int(v) for v in row] for row in self.mul.tolist()]
        return {"size": self.size, "identities": self.identities.tolist(),
                "inv": self.inv.tolist(), "mul": mul, "names": list(self.names)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "FinGroupoid":
        n = data["size"]
        mul = [[UNDEF if v is None else v for v in row] for row in data["mul"]] if n else []
        g = cls(np.array(mul, dtype=np.int64).reshape(n, n), data["inv"], names=data.get("names"))
        if sorted(data.get("identities", g.identities.tolist())) != g.identities.tolist():
            raise ValueError("declared identities disagree with the table")
        return g

    @classmethod
    def from_json(cls, text: str) -> "FinGroupoid":
        return cls.from_dict(json.loads(text))

    def to_dot(self) -> str:
        lines = ["digraph G {"]
        for e in self.identities:
            lines.append(f'  n{int(e)} [label="{self.names[e]}"];')
        for a in range(self.size):
            if not self.is_identity(a):
                lines.append(f'  n{int(self.d[a])} -> n{int(self.r[a])} [label="{self.names[a]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def from_components(parts: Sequence[tuple]) -> FinGroupoid:
    """Disjoint union of groupoids ``X x H x X``.

    ``parts`` lists ``(points, group)`` with ``points`` a count or a
    sequence.  The element ``(x, h, y)`` is an arrow ``y -> x`` and
    ``(x, h, y)(y, h', z) = (x, hh', z)``.
    """
    labels = []
    offset = 0
    groups = []
    for c, (pts, grp) in enumerate(parts):
        k = pts if isinstance(pts, int) else len(pts)
        if k <= 0:
            raise ValueError("each component needs at least one point")
        grp = grp or trivial_group()
        groups.append(grp)
        pts_global = range(offset, offset + k)
        for x in pts_global:
            for y in pts_global:
                for h in range(grp.order):
                    labels.append((c, x, h, y))
        offset += k
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    mul = np.full((n, n), UNDEF, dtype=np.int64)
    inv = np.zeros(n, dtype=np.int64)
    for i, (c, x, h, y) in enumerate(labels):
        g = groups[c]
        inv[i] = index[(c, y, int(g.inv[h]), x)]
        for j, (c2, y2, h2, z) in enumerate(labels):
            if c2 == c and y2 == y:
                mul[i, j] = index[(c, x, g.mul(h, h2), z)]

    def name(lab):
        c, x, h, y = lab
        if groups[c].order == 1:
            return f"({x + 1},{y + 1})"
        return f"({x + 1},{groups[c].names[h]},{y + 1})"

    return FinGroupoid(mul, inv, names=[name(l) for l in labels], labels=labels)


def pair_groupoid(n: int) -> FinGroupoid:
    return from_components([(n, trivial_group())])


def discrete_groupoid(n: int) -> FinGroupoid:
    return from_components([(1, trivial_group())] * n)


def empty_groupoid() -> FinGroupoid:
    return FinGroupoid(np.zeros((0, 0), dtype=np.int64), [])


def disjoint_union(g: FinGroupoid, h: FinGroupoid) -> FinGroupoid:
    n, k = g.size, h.size
    mul = np.full((n + k, n + k), UNDEF, dtype=np.int64)
    mul[:n, :n] = g.mul
    mul[n:, n:] = np.where(h.mul >= 0, h.mul + n, UNDEF)
    inv = np.concatenate([g.inv, h.inv + n])
    names = [f"{x}" for x in g.names] + [f"{x}'" for x in h.names]
    return FinGroupoid(mul, inv, names=names)


def adjoin_identity(g: FinGroupoid) -> FinGroupoid:
    """``g`` plus one new isolated identity, placed last and named ``inf``."""
    n = g.size
    mul = np.full((n + 1, n + 1), UNDEF, dtype=np.int64)
    mul[:n, :n] = g.mul
    mul[n, n] = n
    inv = np.concatenate([g.inv, [n]])
    return FinGroupoid(mul, inv, names=list(g.names) + ["inf"])


# -- structure ---------------------------------------------------------------

def connected_components(g: FinGroupoid) -> list[frozenset]:
    """Element sets of the components, sorted by smallest identity."""
    parent = {int(e): int(e) for e in g.identities}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(g.size):
        x, y = find(int(g.d[a])), find(int(g.r[a]))
        if x != y:
            parent[max(x, y)] = min(x, y)
    comps = {}
    for a in range(g.size):
        comps.setdefault(find(int(g.d[a])), set()).add(a)
    return [frozenset(comps[k]) for k in sorted(comps)]


def local_group(g: FinGroupoid, e) -> Group:
    if not g.is_identity(e):
        raise ValueError(f"{g.names[e]} is not an identity")
    elems = g.hom(e, e)
    pos = {x: i for i, x in enumerate(elems)}
    table = [[pos[int(g.mul[a, b])] for b in elems] for a in elems]
    return Group(table, names=[g.names[x] for x in elems])


def iso_part(g: FinGroupoid) -> frozenset:
    return frozenset(np.nonzero(g.d == g.r)[0].tolist())


def subset_mul(g: FinGroupoid, A, B) -> frozenset:
    A, B = list(A), list(B)
    if not A or not B:
        return frozenset()
    prods = g.mul[np.ix_(A, B)]
    return frozenset(prods[prods >= 0].tolist())


def subset_inv(g: FinGroupoid, A) -> frozenset:
    return frozenset(int(g.inv[a]) for a in A)


def is_local_bisection(g: FinGroupoid, A) -> bool:
    """Distinct elements have distinct domains and distinct ranges."""
    A = sorted(set(A))
    by_unique = len({int(g.d[a]) for a in A}) == len(A) and len({int(g.r[a]) for a in A}) == len(A)
    ids = set(g.identities.tolist())
    Ai = subset_inv(g, A)
    by_products = subset_mul(g, Ai, A) <= ids and subset_mul(g, A, Ai) <= ids
    if by_unique != by_products:
        raise AssertionError("the two local bisection tests disagree")
    return by_unique


def local_bisections(g: FinGroupoid, cap: int = SIZE_CAP) -> list[tuple]:
    """Every local bisection as a sorted tuple, smallest first."""
    ids = g.identities.tolist()
    by_dom = {e: g.star(e) for e in ids}
    out = []
    used_r = set()
    chosen = []

    def rec(i):
        if i == len(ids):
            out.append(tuple(sorted(chosen)))
            if len(out) > cap:
                raise ValueError(f"more than {cap} local bisections")
            return
        rec(i + 1)
        for a in by_dom[ids[i]]:
            ra = int(g.r[a])
            if ra not in used_r:
                used_r.add(ra)
                chosen.append(a)
                rec(i + 1)
                chosen.pop()
                used_r.discard(ra)

    rec(0)
    out.sort(key=lambda t: (len(t), t))
    return out


def kb(g: FinGroupoid, cap: int = SIZE_CAP) -> FinInvSemi:
    """Local bisections under subset multiplication.

    Labels are the bisections themselves (sorted element tuples).
    """
    bis = local_bisections(g, cap)
    index = {b: i for i, b in enumerate(bis)}
    n = len(bis)
    # for each bisection, map an identity to the arrow leaving it
    leaving = [{int(g.d[a]): a for a in b} for b in bis]
    mul = np.empty((n, n), dtype=np.int64)
    for j, B in enumerate(bis):
        for i in range(n):
            la = leaving[i]
            prod = [int(g.mul[la[int(g.r[b])], b]) for b in B if int(g.r[b]) in la]
            mul[i, j] = index[tuple(sorted(prod))]
    inv = [index[tuple(sorted(int(g.inv[a]) for a in b))] for b in bis]

    def name(b):
        return "{" + ",".join(g.names[a] for a in b) + "}"

    return FinInvSemi(mul, inv, index[()], names=[name(b) for b in bis], labels=bis)


# -- functors ----------------------------------------------------------------

@dataclass(frozen=True)
class GroupoidFunctor:
    source: FinGroupoid
    target: FinGroupoid
    table: tuple

    def __call__(self, a):
        return self.table[a]

    def law_failure(self):
        s, t, m = self.source, self.target, np.asarray(self.table, dtype=np.int64)
        if len(m) != s.size:
            return ("shape", None)
        if s.size == 0:
            return None
        if m.min() < 0 or m.max() >= t.size:
            return ("range", None)
        if not np.array_equal(m[s.inv], t.inv[m]):
            return ("inverse", int(np.argmax(m[s.inv] != t.inv[m])))
        a_, b_ = np.nonzero(s.mul >= 0)
        img = t.mul[m[a_], m[b_]]
        bad = np.nonzero(img != m[s.mul[a_, b_]])[0]
        if len(bad):
            return ("product", (int(a_[bad[0]]), int(b_[bad[0]])))
        return None

    def is_functor(self) -> bool:
        return self.law_failure() is None

    def compose(self, other: "GroupoidFunctor") -> "GroupoidFunctor":
        """``self`` after ``other``."""
        return GroupoidFunctor(other.source, self.target, tuple(self.table[x] for x in other.table))


def identity_functor(g: FinGroupoid) -> GroupoidFunctor:
    return GroupoidFunctor(g, g, tuple(range(g.size)))


def is_covering_functor(phi: GroupoidFunctor) -> bool:
    """Bijective from each star onto the star of the image identity."""
    bad = phi.law_failure()
    if bad is not None:
        raise ValueError(f"not a functor: {bad[0]} fails at {bad[1]}")
    s, t = phi.source, phi.target
    for e in s.identities:
        img = sorted(phi(a) for a in s.star(e))
        if img != sorted(t.star(phi(int(e)))):
            return False
    return True


def lift_product(phi: GroupoidFunctor, x, a, b) -> tuple[int, int]:
    """Factor ``x = uv`` upstairs with ``phi(u) = a``, ``phi(v) = b``."""
    s, t = phi.source, phi.target
    if not t.defined(a, b) or t.mul[a, b] != phi(x):
        raise ValueError("need phi(x) = ab")
    hits = [v for v in s.star(int(s.d[x])) if phi(v) == b]
    if len(hits) != 1:
        raise ValueError(f"no unique lift of {t.names[b]} at {s.names[int(s.d[x])]}")
    v = hits[0]
    u = int(s.mul[x, s.inv[v]])
    if phi(u) != a or s.mul[u, v] != x:
        raise AssertionError("lift failed to factor x")
    return u, v


def find_groupoid_isomorphism(g: FinGroupoid, h: FinGroupoid) -> Optional[tuple]:
    """An isomorphism ``g -> h`` or ``None``, by backtracking."""
    if g.size != h.size or len(g.identities) != len(h.identities):
        return None

    def invariant(x, a):
        loop = x.d[a] == x.r[a]
        order = 0
        if loop:
            k, y = 1, a
            while y != x.d[a]:
                y, k = x.mul[y, a], k + 1
            order = k
        return (bool(x.is_identity(a)), bool(loop), order,
                len(x.hom(x.d[a], x.r[a])), len(x.star(x.d[a])))

    pool = {}
    for b in range(h.size):
        pool.setdefault(invariant(h, b), []).append(b)
    # identities first so that products have a chance to be checked early
    order = sorted(range(g.size), key=lambda a: (not g.is_identity(a), a))
    phi = [-1] * g.size
    used = [False] * h.size

    def ok(a):
        b = phi[a]
        if phi[g.d[a]] >= 0 and phi[g.d[a]] != h.d[b]:
            return False
        if phi[g.r[a]] >= 0 and phi[g.r[a]] != h.r[b]:
            return False
        for c in range(g.size):
            if phi[c] < 0:
                continue
            if g.mul[a, c] >= 0:
                p = phi[g.mul[a, c]]
                if h.mul[b, phi[c]] < 0 or (p >= 0 and p != h.mul[b, phi[c]]):
                    return False
            if g.mul[c, a] >= 0:
                p = phi[g.mul[c, a]]
                if h.mul[phi[c], b] < 0 or (p >= 0 and p != h.mul[phi[c], b]):
                    return False
        return True

    def rec(k):
        if k == len(order):
            return True
        a = order[k]
        for b in pool.get(invariant(g, a), []):
            if used[b]:
                continue
            phi[a], used[b] = b, True
            if ok(a) and rec(k + 1):
                return True
            phi[a], used[b] = -1, False
        return False

    if not rec(0):
        return None
    f = GroupoidFunctor(g, h, tuple(phi))
    if not f.is_functor():
        raise AssertionError("backtracking produced a non-functor")
    return tuple(phi)


# -- properties (discrete case) ----------------------------------------------

def is_principal(g: FinGroupoid) -> bool:
    """At most one arrow between any two identities."""
    pairs = set(zip(g.d.tolist(), g.r.tolist()))
    return len(pairs) == g.size


def is_effective_discrete(g: FinGroupoid) -> bool:
    """The isotropy is just the identities (interior of a set is itself)."""
    return iso_part(g) == frozenset(g.identities.tolist())


def is_minimal_discrete(g: FinGroupoid) -> bool:
    """Exactly two invariant subsets of identities: empty and everything."""
    return g.size > 0 and len(connected_components(g)) == 1


def is_hausdorff_discrete(g: FinGroupoid) -> bool:
    # a finite discrete space is Hausdorff
    return True
