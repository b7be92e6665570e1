"""Finite inverse semigroups with zero, stored as multiplication tables.

Everything derived from the table (idempotents, natural order,
compatibility, meets and joins) is computed once in the constructor, so
instances are read-only after creation.

Partial bijections compose right to left: ``x*y`` applies ``y`` first.
"""
from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Optional, Sequence

import numpy as np

from .groups import Group, trivial_group

SIZE_CAP = 5000
EXHAUSTIVE_ASSOC = 1000
ASSOC_SAMPLES = 200_000


class FinInvSemi:
    """A finite inverse semigroup with zero.

    ``mul[a, b]`` is ``ab``, ``inv[a]`` is the inverse of ``a`` and
    ``zero`` is the index of the zero.  ``labels`` can carry any hashable
    description of the elements (graphs of partial bijections, pairs in a
    product, bisections) and ``names`` are the strings used in output.
    """

    def __init__(self, mul, inv, zero: int, names=None, labels=None, check: bool = True):
        m = np.array(mul, dtype=np.int64)
        iv = np.array(inv, dtype=np.int64)
        n = m.shape[0] if m.ndim == 2 else 0
        if m.ndim != 2 or m.shape != (n, n) or iv.shape != (n,) or n == 0:
            raise ValueError("mul must be n x n and inv of length n, n >= 1")
        if n > SIZE_CAP:
            raise ValueError(f"{n} elements exceeds the size cap {SIZE_CAP}")
        if m.min() < 0 or m.max() >= n or iv.min() < 0 or iv.max() >= n:
            raise ValueError("table entries out of range")
        if not 0 <= zero < n:
            raise ValueError("zero index out of range")
        self.size = n
        self.zero = int(zero)
        self.mul = m
        self.inv = iv
        self.labels = tuple(labels) if labels is not None else None
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        if len(self.names) != n or (self.labels is not None and len(self.labels) != n):
            raise ValueError("names/labels length mismatch")
        self._index = {nm: i for i, nm in enumerate(self.names)}
        idx = np.arange(n)
        if check:
            self._validate()
        self.is_idem = m[idx, idx] == idx
        self.idempotents = np.nonzero(self.is_idem)[0]
        self.d = m[iv, idx]
        self.r = m[idx, iv]
        # a <= b iff a = b d(a); cross-checked against a = r(a) b
        leq = m[:, self.d].T == idx[:, None]
        if not np.array_equal(leq, m[self.r, :] == idx[:, None]):
            raise AssertionError("the two forms of the natural order disagree")
        self.leq = leq
        self.compat = self.is_idem[m[iv, :]] & self.is_idem[m[:, iv]]
        self.meet_table = _glb_table(leq)
        self.join_table = _glb_table(leq.T)
        for arr in (m, iv, self.is_idem, self.idempotents, self.d, self.r, self.leq,
                    self.compat, self.meet_table, self.join_table):
            arr.setflags(write=False)

    def _validate(self):
        m, iv, n, z = self.mul, self.inv, self.size, self.zero
        idx = np.arange(n)
        if n <= EXHAUSTIVE_ASSOC:
            for a in range(n):
                # (ab)c vs a(bc) for all b, c at once
                left = m[m[a], :]
                right = m[a][m]
                if not np.array_equal(left, right):
                    b, c = np.argwhere(left != right)[0]
                    raise ValueError(f"not associative at {(a, int(b), int(c))}")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
            bad = np.nonzero(m[m[a, b], c] != m[a, m[b, c]])[0]
            if len(bad):
                k = bad[0]
                raise ValueError(f"not associative at {(int(a[k]), int(b[k]), int(c[k]))}")
        if not np.array_equal(m[m[idx, iv], idx], idx):
            raise ValueError("a a^-1 a = a fails")
        if not np.array_equal(m[m[iv, idx], iv], iv):
            raise ValueError("a^-1 a a^-1 = a^-1 fails")
        e = np.nonzero(m[idx, idx] == idx)[0]
        sub = m[np.ix_(e, e)]
        if not np.array_equal(sub, sub.T):
            i, j = np.argwhere(sub != sub.T)[0]
            raise ValueError(f"idempotents {int(e[i])} and {int(e[j])} do not commute")
        if not ((m[z] == z).all() and (m[:, z] == z).all()):
            raise ValueError(f"element {z} is not a zero")

    # -- lookups -------------------------------------------------------------

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FinInvSemi(size={self.size})"

    def __getitem__(self, name) -> int:
        """Index of the element called ``name``."""
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no element named {name!r}") from None

    def name(self, a: int) -> str:
        return self.names[a]

    def prod(self, *xs) -> int:
        out = xs[0]
        for x in xs[1:]:
            out = int(self.mul[out, x])
        return int(out)

    def meet(self, a, b) -> Optional[int]:
        v = int(self.meet_table[a, b])
        return None if v < 0 else v

    def join(self, a, b) -> Optional[int]:
        v = int(self.join_table[a, b])
        return None if v < 0 else v

    def join_all(self, xs) -> Optional[int]:
        out = self.zero
        for x in xs:
            out = self.join(out, x)
            if out is None:
                return None
        return out

    def down(self, a) -> np.ndarray:
        return np.nonzero(self.leq[:, a])[0]

    def identity(self) -> Optional[int]:
        """The identity element, if this is a monoid."""
        if self.size == 1:
            return self.zero
        top = self.join_all(self.idempotents)
        if top is None:
            return None
        idx = np.arange(self.size)
        if np.array_equal(self.mul[top], idx) and np.array_equal(self.mul[:, top], idx):
            return top
        return None

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        return {"size": self.size, "mul": self.mul.tolist(), "inv": self.inv.tolist(),
                "zero": self.zero, "names": list(self.names)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "FinInvSemi":
        s = cls(data["mul"], data["inv"], data["zero"], names=data.get("names"))
        if s.size != data.get("size", s.size):
            raise ValueError("size field disagrees with table")
        return s

    @classmethod
    def from_json(cls, text: str) -> "FinInvSemi":
        return cls.from_dict(json.loads(text))


def _glb_table(leq: np.ndarray) -> np.ndarray:
    """Greatest lower bounds from an order matrix, -1 where none exists.

    ``m`` is the glb of ``a, b`` exactly when ``m`` is a lower bound and
    its down-set is as large as the set of all lower bounds.
    """
    n = leq.shape[0]
    li = leq.astype(np.int32)
    down = li.sum(axis=0)              # |m-down|
    n_lower = li.T @ li                # |lower bounds of a, b|
    out = np.full((n, n), -1, dtype=np.int64)
    for a in range(n):
        lb = leq[:, a][:, None] & leq          # lb[m, b]: m <= a and m <= b
        hit = lb & (down[:, None] == n_lower[a][None, :])
        has = hit.any(axis=0)
        out[a, has] = hit.argmax(axis=0)[has]
    return out


# -- partial bijections ------------------------------------------------------

@dataclass(frozen=True)
class PartialBijection:
    """A partial bijection of ``{0..m-1}``: ``images[i]`` or -1 if undefined."""

    images: tuple

    def __post_init__(self):
        vals = [v for v in self.images if v >= 0]
        if len(vals) != len(set(vals)) or any(v >= len(self.images) for v in vals):
            raise ValueError("not a partial bijection")

    @classmethod
    def from_pairs(cls, m: int, pairs) -> "PartialBijection":
        img = [-1] * m
        for s, t in pairs:
            if img[s] != -1:
                raise ValueError("source repeated")
            img[s] = t
        return cls(tuple(img))

    @property
    def pairs(self):
        return tuple((i, v) for i, v in enumerate(self.images) if v >= 0)

    def __mul__(self, other):
        """``self * other`` applies ``other`` first."""
        return PartialBijection(tuple(-1 if v < 0 else self.images[v] for v in other.images))

    def inverse(self):
        img = [-1] * len(self.images)
        for s, t in self.pairs:
            img[t] = s
        return PartialBijection(tuple(img))

    def name(self) -> str:
        if not self.pairs:
            return "0"
        return "[" + ",".join(f"{s + 1}->{t + 1}" for s, t in self.pairs) + "]"


def _from_labels(labels, mul_fn, inv_fn, zero_label, names):
    index = {x: i for i, x in enumerate(labels)}
    n = len(labels)
    mul = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(labels):
        for j, y in enumerate(labels):
            mul[i, j] = index[mul_fn(x, y)]
    inv = [index[inv_fn(x)] for x in labels]
    return FinInvSemi(mul, inv, index[zero_label], names=names, labels=labels)


def symmetric_inverse_monoid(n: int) -> FinInvSemi:
    """All partial bijections of an ``n``-set; names like ``[1->2,2->1]``."""
    if not 0 <= n <= 5:
        raise ValueError("symmetric inverse monoid limited to n <= 5")
    labels = []
    for k in range(n + 1):
        for dom in combinations(range(n), k):
            for img in permutations(range(n), k):
                labels.append(PartialBijection.from_pairs(n, zip(dom, img)))
    labels.sort(key=lambda p: (len(p.pairs), p.pairs))
    return _from_labels(labels, lambda x, y: x * y, lambda x: x.inverse(),
                        PartialBijection((-1,) * n), [p.name() for p in labels])


def group_with_zero(g: Group) -> FinInvSemi:
    """``G`` with a zero adjoined; element 0 is the zero, ``i+1`` is ``g_i``."""
    if not isinstance(g, Group):
        g = Group(g)
    n = g.order + 1
    mul = np.zeros((n, n), dtype=np.int64)
    mul[1:, 1:] = g.table + 1
    inv = np.concatenate([[0], g.inv + 1])
    return FinInvSemi(mul, inv, 0, names=["0"] + list(g.names), labels=[None] + list(range(g.order)))


@dataclass(frozen=True)
class LabelledPB:
    """A rook matrix: arrows ``i -> images[i]`` each carrying a group label."""

    images: tuple
    tags: tuple  # group element per arrow, -1 where undefined


def rook_matrices(n: int, g: Group) -> FinInvSemi:
    """Rook matrices over ``G`` with zero, as labelled partial bijections.

    The composite of ``i -> j`` (label ``h``) followed by ``j -> k``
    (label ``g``) is ``i -> k`` with label ``g h``.
    """
    if n > 3 or g.order > 3:
        raise ValueError("rook matrices limited to n <= 3 and |G| <= 3")
    labels = []
    for k in range(n + 1):
        for dom in combinations(range(n), k):
            for img in permutations(range(n), k):
                for tags in product(range(g.order), repeat=k):
                    im, tg = [-1] * n, [-1] * n
                    for s, t, h in zip(dom, img, tags):
                        im[s], tg[s] = t, h
                    labels.append(LabelledPB(tuple(im), tuple(tg)))

    def mul_fn(x, y):
        im, tg = [-1] * n, [-1] * n
        for i in range(n):
            j = y.images[i]
            if j >= 0 and x.images[j] >= 0:
                im[i] = x.images[j]
                tg[i] = g.mul(x.tags[j], y.tags[i])
        return LabelledPB(tuple(im), tuple(tg))

    def inv_fn(x):
        im, tg = [-1] * n, [-1] * n
        for i in range(n):
            if x.images[i] >= 0:
                im[x.images[i]] = i
                tg[x.images[i]] = int(g.inv[x.tags[i]])
        return LabelledPB(tuple(im), tuple(tg))

    def name(x):
        arrows = [f"{i + 1}->{x.images[i] + 1}:{g.names[x.tags[i]]}" for i in range(n) if x.images[i] >= 0]
        return "[" + ",".join(arrows) + "]" if arrows else "0"

    labels.sort(key=lambda x: (sum(v >= 0 for v in x.images), x.images, x.tags))
    return _from_labels(labels, mul_fn, inv_fn, LabelledPB((-1,) * n, (-1,) * n), [name(x) for x in labels])


def direct_product(s: FinInvSemi, t: FinInvSemi) -> FinInvSemi:
    """Componentwise product; element ``(a, b)`` has index ``a*|t| + b``."""
    ns, nt = s.size, t.size
    mul = (s.mul[:, None, :, None] * nt + t.mul[None, :, None, :]).reshape(ns * nt, ns * nt)
    inv = (s.inv[:, None] * nt + t.inv[None, :]).reshape(-1)
    names = [f"({a},{b})" for a in s.names for b in t.names]
    labels = [(a, b) for a in range(ns) for b in range(nt)]
    return FinInvSemi(mul, inv, s.zero * nt + t.zero, names=names, labels=labels)


def semilattice_chain(k: int) -> FinInvSemi:
    """The chain ``0 < 1 < ... < k-1`` under min, as an inverse semigroup."""
    idx = np.arange(k)
    return FinInvSemi(np.minimum(idx[:, None], idx[None, :]), idx, 0)


def zero_semigroup() -> FinInvSemi:
    return FinInvSemi([[0]], [0], 0, names=["0"])


def restrict(s: FinInvSemi, subset) -> tuple[FinInvSemi, list[int]]:
    """The sub-table on a closed subset; returns it with the inclusion map."""
    keep = sorted(set(int(x) for x in subset))
    pos = {x: i for i, x in enumerate(keep)}
    try:
        mul = [[pos[int(s.mul[a, b])] for b in keep] for a in keep]
        inv = [pos[int(s.inv[a])] for a in keep]
    except KeyError as exc:
        raise ValueError(f"subset is not closed: {exc}") from None
    labels = [s.labels[a] for a in keep] if s.labels is not None else None
    sub = FinInvSemi(mul, inv, pos[s.zero], names=[s.names[a] for a in keep], labels=labels)
    return sub, keep


def subalgebra_closure(s: FinInvSemi, gens, cap: int = SIZE_CAP) -> frozenset:
    """Close under products, inverses, compatible joins and ``e \\ f`` on idempotents."""
    cur = np.zeros(s.size, dtype=bool)
    cur[s.zero] = True
    cur[list(gens)] = True
    while True:
        members = np.nonzero(cur)[0]
        if len(members) > cap:
            raise ValueError(f"closure exceeds cap {cap}")
        new = cur.copy()
        new[s.mul[np.ix_(members, members)].ravel()] = True
        new[s.inv[members]] = True
        sub = np.ix_(members, members)
        j = s.join_table[sub][s.compat[sub]]
        new[j[j >= 0]] = True
        es = members[s.is_idem[members]]
        for e in es:
            for f in es:
                new[idempotent_difference(s, e, f)] = True
        if np.array_equal(new, cur):
            return frozenset(members.tolist())
        cur = new


def subalgebra_generated(s: FinInvSemi, gens, cap: int = SIZE_CAP) -> tuple[FinInvSemi, list[int]]:
    return restrict(s, subalgebra_closure(s, gens, cap))


def random_subalgebra(s: FinInvSemi, seed: int, k: int = 2) -> tuple[FinInvSemi, list[int]]:
    rng = random.Random(seed)
    gens = rng.sample(range(s.size), k)
    return subalgebra_generated(s, gens)


# -- order, compatibility, meets and joins -----------------------------------

def natural_order(s: FinInvSemi, a, b) -> bool:
    return bool(s.leq[a, b])


def compatible(s: FinInvSemi, a, b) -> bool:
    return bool(s.compat[a, b])


def orthogonal(s: FinInvSemi, a, b) -> bool:
    z = s.zero
    return s.mul[s.d[a], s.d[b]] == z and s.mul[s.r[a], s.r[b]] == z


def fixed_point_operator(s: FinInvSemi, a) -> int:
    """Largest idempotent below ``a``, found by scanning."""
    below = [e for e in s.idempotents if s.leq[e, a]]
    top = [e for e in below if all(s.leq[f, e] for f in below)]
    if len(top) != 1:
        raise ValueError(f"no largest idempotent below {s.names[a]}")
    return int(top[0])


def meet(s: FinInvSemi, a, b) -> Optional[int]:
    """Greatest lower bound, or ``None`` when there is none."""
    return s.meet(a, b)


def meet_by_formula(s: FinInvSemi, a, b) -> int:
    """``phi(a b^-1) b``, the closed form valid in a meet semigroup."""
    return s.prod(fixed_point_operator(s, s.prod(a, int(s.inv[b]))), b)


def compatible_join(s: FinInvSemi, a, b) -> Optional[int]:
    if not s.compat[a, b]:
        raise ValueError(f"{s.names[a]} and {s.names[b]} are not compatible")
    return s.join(a, b)


def meet_join_failures(s: FinInvSemi) -> dict:
    """Exhaustive check of the meet/join calculus with binary joins.

    Keys ``"1"`` .. ``"5"``; each value is ``None`` or a witness tuple.
    1. ``d(a v b) = d(a) v d(b)`` and the same for ``r`` (monoids only)
    2. ``(a ^ b)c = ac ^ bc`` and ``c(a ^ b) = ca ^ cb``
    3. ``c ^ (a1 v a2) = (c ^ a1) v (c ^ a2)``
    4. ``a ^ (b1 v b2)`` exists when ``a ^ b1``, ``a ^ b2`` do, and equals their join
    5. ``(a1 v a2) ^ (b1 v b2)`` is the join of the four ``ai ^ bj``
    """
    m, mt, jt = s.mul, s.meet_table, s.join_table
    n = s.size
    out = {k: None for k in "12345"}

    def first(mask, *cols):
        hit = np.argwhere(mask)
        if len(hit) == 0:
            return None
        k = tuple(hit[0])
        return tuple(int(c[k]) for c in cols)

    def jn(x, y):
        # join with -1 propagated
        ok = (x >= 0) & (y >= 0)
        return np.where(ok, jt[np.maximum(x, 0), np.maximum(y, 0)], -1)

    pa, pb = np.nonzero(s.compat)
    pj = jt[pa, pb]
    if s.identity() is not None:
        bad = (s.d[pj] != jt[s.d[pa], s.d[pb]]) | (s.r[pj] != jt[s.r[pa], s.r[pb]])
        out["1"] = first(bad, pa, pb)

    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    ab = mt[a, b]
    has = ab >= 0
    right = mt[m[a, c], m[b, c]]
    left = mt[m[c, a], m[c, b]]
    bad = has & ((right != m[np.maximum(ab, 0), c]) | (left != m[c, np.maximum(ab, 0)]))
    out["2"] = first(bad, a, b, c)

    # clauses 3 and 4 over (compatible pair, other element)
    k, cc = np.meshgrid(np.arange(len(pa)), np.arange(n), indexing="ij")
    a1, a2, j = pa[k], pb[k], pj[k]
    cj = mt[cc, j]
    m1, m2 = mt[cc, a1], mt[cc, a2]
    bad3 = (cj >= 0) & ((m1 < 0) | (m2 < 0) | (jn(m1, m2) != cj))
    out["3"] = first(bad3, cc, a1, a2)
    bad4 = (m1 >= 0) & (m2 >= 0) & ((cj < 0) | (jn(m1, m2) != cj))
    out["4"] = first(bad4, cc, a1, a2)

    p, q = np.meshgrid(np.arange(len(pa)), np.arange(len(pa)), indexing="ij")
    a1, a2, b1, b2 = pa[p], pb[p], pa[q], pb[q]
    ms = [mt[x, y] for x in (a1, a2) for y in (b1, b2)]
    allm = np.logical_and.reduce([x >= 0 for x in ms])
    big = jn(jn(ms[0], ms[1]), jn(ms[2], ms[3]))
    ab = mt[pj[p], pj[q]]
    bad5 = allm & ((big < 0) | (ab < 0) | (big != ab))
    out["5"] = first(bad5, a1, a2, b1, b2)
    return out


def idempotent_difference(s: FinInvSemi, e, f) -> int:
    """``e \\ f`` for idempotents: the ``g <= e`` with ``gf = 0`` and ``g v ef = e``."""
    ef = int(s.mul[e, f])
    for g in s.idempotents:
        if s.leq[g, e] and s.mul[g, f] == s.zero and s.join(g, ef) == e:
            return int(g)
    raise ValueError(f"no relative complement of {s.names[f]} in {s.names[e]}")


def complement_below(s: FinInvSemi, b, a) -> int:
    """``a \\ b`` for ``b <= a``: move ``d(a) \\ d(b)`` back through ``a``."""
    if not s.leq[b, a]:
        raise ValueError(f"{s.names[b]} is not below {s.names[a]}")
    c = s.prod(a, idempotent_difference(s, int(s.d[a]), int(s.d[b])))
    hits = [x for x in range(s.size) if orthogonal(s, b, x) and s.join(b, x) == a]
    if hits != [c]:
        raise AssertionError(f"complement below is not unique: {hits} vs {c}")
    return c


@dataclass
class BooleanReport:
    ok: bool
    failure: Optional[str] = None
    witness: Optional[tuple] = None


def is_boolean(s: FinInvSemi) -> BooleanReport:
    """Idempotents relatively complemented, compatible joins exist, and
    multiplication distributes over them."""
    z = s.zero
    E = s.idempotents
    for e in E:
        for f in E:
            ef = int(s.mul[e, f])
            if not any(s.leq[g, e] and s.mul[g, f] == z and s.join(g, ef) == e for g in E):
                return BooleanReport(False, "idempotents not relatively complemented", (int(e), int(f)))
    missing = np.argwhere(s.compat & (s.join_table < 0))
    if len(missing):
        a, b = missing[0]
        return BooleanReport(False, "compatible join missing", (int(a), int(b)))
    pa, pb = np.nonzero(s.compat)
    j = s.join_table[pa, pb]
    # c(a v b) = ca v cb for every c, all compatible pairs at once
    left = s.mul[:, j]
    right = s.join_table[s.mul[:, pa], s.mul[:, pb]]
    bad = np.argwhere(left != right)
    if len(bad):
        c, k = bad[0]
        return BooleanReport(False, "left distributivity fails", (int(c), int(pa[k]), int(pb[k])))
    left = s.mul[j, :]
    right = s.join_table[s.mul[pa, :], s.mul[pb, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        k, c = bad[0]
        return BooleanReport(False, "right distributivity fails", (int(pa[k]), int(pb[k]), int(c)))
    return BooleanReport(True)


def require_boolean(s: FinInvSemi):
    rep = is_boolean(s)
    if not rep.ok:
        raise ValueError(f"not a Boolean inverse semigroup: {rep.failure} at {rep.witness}")


def is_meet_semigroup(s: FinInvSemi) -> bool:
    return bool((s.meet_table >= 0).all())


# -- ideals ------------------------------------------------------------------

def ideal_closure(s: FinInvSemi, xs) -> frozenset:
    """Smallest additive ideal containing ``xs``."""
    cur = np.zeros(s.size, dtype=bool)
    cur[s.zero] = True
    cur[list(xs)] = True
    while True:
        members = np.nonzero(cur)[0]
        new = cur.copy()
        new[s.mul[:, members].ravel()] = True
        new[s.mul[members, :].ravel()] = True
        sub = np.ix_(members, members)
        j = s.join_table[sub][s.compat[sub]]
        new[j[j >= 0]] = True
        if np.array_equal(new, cur):
            return frozenset(members.tolist())
        cur = new


def semigroup_ideal(s: FinInvSemi, xs) -> frozenset:
    """Smallest semigroup ideal containing ``xs`` (and zero): X, SX, XS, SXS."""
    xs = sorted(set(xs) | {s.zero})
    right = np.unique(s.mul[xs, :])
    out = set(xs)
    out.update(s.mul[:, xs].ravel().tolist())
    out.update(right.tolist())
    out.update(s.mul[:, right].ravel().tolist())
    return frozenset(out)


def is_additive_ideal(s: FinInvSemi, xs) -> bool:
    return ideal_closure(s, xs) == frozenset(xs) | {s.zero}


def additive_ideals(s: FinInvSemi) -> list[frozenset]:
    """All additive ideals, by repeatedly adjoining one element and closing."""
    start = ideal_closure(s, [])
    seen = {start}
    frontier = [start]
    while frontier:
        ideal = frontier.pop()
        for a in range(s.size):
            if a in ideal:
                continue
            nxt = ideal_closure(s, ideal | {a})
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return sorted(seen, key=lambda i: (len(i), sorted(i)))


@dataclass(frozen=True)
class Pencil:
    """Elements whose domains join to ``source`` and whose ranges lie below ``target``."""

    elements: tuple
    source: int
    target: int


def pencil(s: FinInvSemi, e, f) -> Optional[Pencil]:
    """A pencil from ``e`` to ``f``, or ``None``.

    One exists iff ``e`` lies below the join of ``d(x)`` over all ``x``
    with ``r(x) <= f``; cutting each such ``x`` down by ``e`` gives one.
    """
    reach = [x for x in range(s.size) if s.leq[s.r[x], f]]
    cover = s.join_all({int(s.d[x]) for x in reach})
    if cover is None or not s.leq[e, cover]:
        return None
    xs = sorted({s.prod(x, e) for x in reach} - {s.zero})
    p = Pencil(tuple(xs), int(e), int(f))
    if s.join_all({int(s.d[x]) for x in xs}) != e or not all(s.leq[s.r[x], f] for x in xs):
        raise AssertionError("constructed pencil is invalid")
    return p


def is_zero_simplifying(s: FinInvSemi) -> bool:
    """Only ``{0}`` and ``S`` are additive ideals, checked two ways."""
    if s.size == 1:
        return False
    by_ideals = len(additive_ideals(s)) == 2
    nz = [int(e) for e in s.idempotents if e != s.zero]
    by_pencils = all(pencil(s, e, f) is not None for e in nz for f in nz)
    if by_ideals != by_pencils:
        raise AssertionError("ideal count and pencil criterion disagree")
    return by_ideals


# -- classification predicates -----------------------------------------------

def is_fundamental(s: FinInvSemi) -> bool:
    E = s.idempotents
    central = (s.mul[:, E] == s.mul[E, :].T).all(axis=1)
    return bool(s.is_idem[central].all())


def infinitesimals(s: FinInvSemi) -> frozenset:
    idx = np.arange(s.size)
    return frozenset(np.nonzero((s.mul[idx, idx] == s.zero) & (idx != s.zero))[0].tolist())


def basic_decomposition(s: FinInvSemi, a) -> Optional[tuple]:
    """``(e, [x1, ...])`` with ``a = e v x1 v ...``, ``e`` idempotent and
    the ``xi`` infinitesimal, or ``None``."""
    inf = sorted(x for x in infinitesimals(s) if s.leq[x, a])
    e = fixed_point_operator(s, a)
    if s.join_all([e] + inf) != a:
        return None
    return e, inf


def is_basic(s: FinInvSemi) -> bool:
    return all(basic_decomposition(s, a) is not None for a in range(s.size))


def atoms(s: FinInvSemi) -> list[int]:
    z = s.zero
    return [a for a in range(s.size) if a != z and s.leq[:, a].sum() == 2]


def is_semisimple(s: FinInvSemi) -> bool:
    # every principal order ideal of a finite semigroup is finite
    return True


def d_relation(s: FinInvSemi) -> np.ndarray:
    """``D[e, f]`` for idempotents: some ``x`` has ``d(x) = e`` and ``r(x) = f``."""
    D = np.zeros((s.size, s.size), dtype=bool)
    D[s.d, s.r] = True
    return D


def is_0_simple(s: FinInvSemi) -> bool:
    """Only ``{0}`` and ``S`` are semigroup ideals."""
    if s.size == 1:
        return False
    D = d_relation(s)
    nz = [int(e) for e in s.idempotents if e != s.zero]
    by_d_order = all(any(D[e, i] and s.leq[i, f] for i in nz) for e in nz for f in nz)
    full = frozenset(range(s.size))
    by_ideals = all(semigroup_ideal(s, [a]) == full for a in range(s.size) if a != s.zero)
    if by_d_order != by_ideals:
        raise AssertionError("D-class criterion and principal ideals disagree")
    return by_d_order


def is_properly_infinite(s: FinInvSemi, e) -> bool:
    """Orthogonal idempotents ``i, j <= e`` each D-related to ``e``."""
    if not s.is_idem[e] or e == s.zero:
        raise ValueError("expected a non-zero idempotent")
    D = d_relation(s)
    cands = [int(i) for i in s.idempotents if s.leq[i, e] and D[e, i]]
    return any(s.mul[i, j] == s.zero for i in cands for j in cands)


def is_purely_infinite(s: FinInvSemi) -> bool:
    return all(is_properly_infinite(s, int(e)) for e in s.idempotents if e != s.zero)


def is_simple(s: FinInvSemi) -> bool:
    return is_fundamental(s) and is_zero_simplifying(s)


def is_sigma_unital(s: FinInvSemi) -> bool:
    warnings.warn("every finite Boolean inverse semigroup is a monoid, so this is trivially true",
                  stacklevel=2)
    return s.identity() is not None or s.size == 1


def units(s: FinInvSemi) -> list[int]:
    one = s.identity()
    if one is None:
        return []
    return [a for a in range(s.size) if s.d[a] == one and s.r[a] == one]


def find_isomorphism(s: FinInvSemi, t: FinInvSemi) -> Optional[tuple]:
    """An isomorphism ``s -> t`` as a tuple, or ``None`` (backtracking)."""
    if s.size != t.size:
        return None

    def invariant(x, a):
        return (bool(x.is_idem[a]), int(x.leq[:, a].sum()), int(x.leq[a].sum()),
                int(x.compat[a].sum()), a == x.zero)

    inv_t = {}
    for b in range(t.size):
        inv_t.setdefault(invariant(t, b), []).append(b)
    order = sorted(range(s.size), key=lambda a: len(inv_t.get(invariant(s, a), [])))
    phi = [-1] * s.size
    used = [False] * t.size

    def consistent(a):
        for b in range(s.size):
            if phi[b] < 0:
                continue
            ab, ba = s.mul[a, b], s.mul[b, a]
            if phi[ab] >= 0 and phi[ab] != t.mul[phi[a], phi[b]]:
                return False
            if phi[ba] >= 0 and phi[ba] != t.mul[phi[b], phi[a]]:
                return False
        return True

    def rec(k):
        if k == len(order):
            return True
        a = order[k]
        for b in inv_t.get(invariant(s, a), []):
            if used[b]:
                continue
            phi[a], used[b] = b, True
            if consistent(a) and rec(k + 1):
                return True
            phi[a], used[b] = -1, False
        return False

    if not rec(0):
        return None
    if not is_morphism_table(s, t, phi):
        raise AssertionError("backtracking produced a non-homomorphism")
    return tuple(phi)


def is_morphism_table(s: FinInvSemi, t: FinInvSemi, phi) -> bool:
    phi = np.asarray(phi)
    return bool(np.array_equal(phi[s.mul], t.mul[phi[:, None], phi[None, :]]))
