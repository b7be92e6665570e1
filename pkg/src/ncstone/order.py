"""Finite posets with a bottom, filters and ultrafilters.

Elements are the integers ``0..size-1``.  Every filter of a finite poset
is principal, so a filter is carried around as its generator and the
member set is recomputed when needed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional

import numpy as np


class FinPoset:
    """A finite partial order given by its ``size x size`` relation matrix.

    ``leq[x, y]`` is true when ``x <= y``.  The relation is checked to be
    reflexive, antisymmetric and transitive on construction.
    """

    def __init__(self, leq, bottom: Optional[int] = None, names=None):
        rel = np.array(leq, dtype=bool)
        if rel.ndim != 2 or rel.shape[0] != rel.shape[1]:
            raise ValueError("leq must be a square matrix")
        n = rel.shape[0]
        if not rel.diagonal().all():
            raise ValueError("leq is not reflexive")
        if (rel & rel.T & ~np.eye(n, dtype=bool)).any():
            raise ValueError("leq is not antisymmetric")
        # x<=y and y<=z force x<=z: boolean matrix square stays inside leq
        if n and ((rel.astype(np.int64) @ rel.astype(np.int64) > 0) & ~rel).any():
            raise ValueError("leq is not transitive")
        if bottom is not None:
            if not 0 <= bottom < n:
                raise ValueError("bottom index out of range")
            if not rel[bottom].all():
                raise ValueError(f"element {bottom} is not below everything")
        rel.setflags(write=False)
        self.leq = rel
        self.size = n
        self.bottom = bottom
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        self._meet = None

    @classmethod
    def from_order(cls, elements, le, bottom=None, names=None) -> "FinPoset":
        """Build from a list of objects and a ``le(x, y)`` predicate."""
        elements = list(elements)
        rel = [[bool(le(x, y)) for y in elements] for x in elements]
        if bottom == "auto":
            bottom = next((i for i, row in enumerate(rel) if all(row)), None)
        if names is None:
            names = [str(x) for x in elements]
        return cls(rel, bottom=bottom, names=names)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FinPoset(size={self.size}, bottom={self.bottom})"

    def _check(self, x: int) -> int:
        if not 0 <= x < self.size:
            raise IndexError(f"element {x} out of range for poset of size {self.size}")
        return x

    def up(self, x: int) -> frozenset:
        return frozenset(np.nonzero(self.leq[self._check(x)])[0].tolist())

    def down(self, x: int) -> frozenset:
        return frozenset(np.nonzero(self.leq[:, self._check(x)])[0].tolist())

    @property
    def meet_table(self) -> np.ndarray:
        """``meet_table[x, y]`` is the glb of ``x`` and ``y``, or -1."""
        if self._meet is None:
            lower = self.leq.T[:, None, :] & self.leq.T[None, :, :]   # [x, y, m]
            count = lower.sum(axis=2)
            dcount = self.leq.sum(axis=0)
            hit = lower & (dcount[None, None, :] == count[:, :, None])
            self._meet = np.where(hit.any(axis=2), hit.argmax(axis=2), -1)
            self._meet.setflags(write=False)
        return self._meet

    def meet(self, x: int, y: int) -> Optional[int]:
        """Greatest lower bound of ``x`` and ``y`` or ``None``."""
        m = int(self.meet_table[self._check(x), self._check(y)])
        return None if m < 0 else m

    def is_meet_semilattice(self) -> bool:
        return bool((self.meet_table >= 0).all())

    def minimal_above_bottom(self) -> list[int]:
        """The atoms: elements covering the bottom."""
        if self.bottom is None:
            raise ValueError("poset has no bottom")
        out = []
        for a in range(self.size):
            if a == self.bottom:
                continue
            below = np.nonzero(self.leq[:, a])[0]
            if set(below.tolist()) == {self.bottom, a}:
                out.append(a)
        return out

    def to_json(self) -> str:
        return json.dumps({
            "size": self.size,
            "leq": self.leq.astype(int).tolist(),
            "bottom": self.bottom,
        })

    @classmethod
    def from_json(cls, text: str) -> "FinPoset":
        data = json.loads(text)
        p = cls(data["leq"], bottom=data.get("bottom"))
        if p.size != data["size"]:
            raise ValueError("size field disagrees with leq matrix")
        return p


@dataclass(frozen=True)
class PrincipalFilter:
    """The filter ``generator``-up of some poset."""

    generator: int

    def members(self, p: FinPoset) -> frozenset:
        return p.up(self.generator)

    def is_proper(self, p: FinPoset) -> bool:
        return self.generator != p.bottom


def chain(n: int) -> FinPoset:
    """The chain ``0 < 1 < ... < n-1`` with bottom 0."""
    idx = np.arange(n)
    return FinPoset(idx[:, None] <= idx[None, :], bottom=0)


def powerset_poset(m: int) -> FinPoset:
    """Subsets of ``{0..m-1}`` as bitmasks, ordered by inclusion."""
    masks = range(1 << m)
    return FinPoset.from_order(masks, lambda x, y: x & ~y == 0, bottom=0,
                               names=[_mask_name(x) for x in masks])


def _mask_name(x: int) -> str:
    return "{" + ",".join(str(i + 1) for i in range(x.bit_length()) if x >> i & 1) + "}"


def closure_up(p: FinPoset, xs: Iterable[int]) -> frozenset:
    xs = [p._check(x) for x in xs]
    if not xs:
        return frozenset()
    return frozenset(np.nonzero(p.leq[xs].any(axis=0))[0].tolist())


def closure_down(p: FinPoset, xs: Iterable[int]) -> frozenset:
    xs = [p._check(x) for x in xs]
    if not xs:
        return frozenset()
    return frozenset(np.nonzero(p.leq[:, xs].any(axis=1))[0].tolist())


def is_filter(p: FinPoset, f: Iterable[int]) -> bool:
    f = frozenset(p._check(x) for x in f)
    if not f:
        raise ValueError("filters are non-empty; got the empty set")
    if closure_up(p, f) != f:
        return False
    members = sorted(f)
    mask = np.zeros(p.size, dtype=bool)
    mask[members] = True
    # every pair of members has a common lower bound inside f
    below = (p.leq[:, members] & mask[:, None]).astype(np.int64)
    return bool((below.T @ below > 0).all())


def filter_minimum(p: FinPoset, f: Iterable[int]) -> int:
    f = frozenset(f)
    if not is_filter(p, f):
        raise ValueError("not a filter")
    members = sorted(f)
    for m in members:
        if p.leq[m, members].all():
            return m
    raise AssertionError("finite filter without a minimum")  # unreachable for a poset


def ultrafilters(p: FinPoset) -> list[PrincipalFilter]:
    """All maximal proper filters, as principal generators (the atoms)."""
    return [PrincipalFilter(a) for a in p.minimal_above_bottom()]


def ultrafilters_bruteforce(p: FinPoset) -> list[PrincipalFilter]:
    """Maximal proper filters found by scanning every principal filter."""
    if p.bottom is None:
        raise ValueError("poset has no bottom")
    proper = [p.up(a) for a in range(p.size) if a != p.bottom]
    gens = [a for a in range(p.size) if a != p.bottom]
    out = []
    for a, fa in zip(gens, proper):
        if not any(fa < fb for fb in proper):
            out.append(PrincipalFilter(a))
    return out


def all_upsets(p: FinPoset):
    """Yield every up-closed subset (including the empty set).

    Elements are decided from the top down, so including ``x`` is allowed
    only when everything above it is already in.
    """
    height = p.leq.sum(axis=1)  # number of elements above, fewer means higher
    order = sorted(range(p.size), key=lambda x: (height[x], x))
    above = [np.nonzero(p.leq[x])[0].tolist() for x in range(p.size)]
    chosen = np.zeros(p.size, dtype=bool)

    def rec(i):
        if i == len(order):
            yield frozenset(np.nonzero(chosen)[0].tolist())
            return
        x = order[i]
        yield from rec(i + 1)
        if all(chosen[y] for y in above[x] if y != x):
            chosen[x] = True
            yield from rec(i + 1)
            chosen[x] = False

    yield from rec(0)


def all_filters(p: FinPoset) -> list[frozenset]:
    """Every filter, found by testing every up-set (small posets only)."""
    if p.size > 40:
        raise ValueError("up-set scan limited to 40 elements")
    return [u for u in all_upsets(p) if u and is_filter(p, u)]


def is_maximal_proper(p: FinPoset, f: frozenset, filters=None) -> bool:
    """Brute-force maximality among proper filters."""
    if p.bottom in f:
        return False
    if filters is None:
        filters = all_filters(p)
    return not any(f < g and p.bottom not in g for g in filters)


def exel_criterion(p: FinPoset, f: Iterable[int]) -> bool:
    """A proper filter ``f`` of a meet semilattice with bottom is maximal
    iff every ``y`` meeting all of ``f`` non-trivially already lies in ``f``.
    """
    if p.bottom is None or not p.is_meet_semilattice():
        raise ValueError("exel_criterion needs a meet semilattice with bottom")
    f = frozenset(f)
    if not is_filter(p, f) or p.bottom in f:
        raise ValueError("exel_criterion needs a proper filter")
    fmask = np.zeros(p.size, dtype=bool)
    fmask[sorted(f)] = True
    meets_all = (p.meet_table[fmask] != p.bottom).all(axis=0)
    return not (meets_all & ~fmask).any()


def intersection_closed(m: int, max_size: int = 12, dedupe: bool = False):
    """Yield every family of subsets of ``{0..m-1}`` that contains the empty
    set, is closed under intersection and has at most ``max_size`` members,
    as a poset under inclusion with the empty set as bottom.

    Every finite meet semilattice with bottom of at most ``m + 1``
    elements appears (up to isomorphism) among these.  With ``dedupe``
    only one family per relabelling of the points is kept.
    """
    sets = list(range(1, 1 << m))
    perms = [p for p in permutations(range(m))] if dedupe else []
    seen = set()
    for choice in range(1 << len(sets)):
        fam = [0] + [x for i, x in enumerate(sets) if choice >> i & 1]
        if len(fam) > max_size:
            continue
        members = set(fam)
        if all(x & y in members for x in fam for y in fam):
            if dedupe:
                key = min(tuple(sorted(_permute_mask(x, p) for x in fam)) for p in perms)
                if key in seen:
                    continue
                seen.add(key)
            yield FinPoset.from_order(fam, lambda x, y: x & ~y == 0, bottom=0,
                                      names=[_mask_name(x) for x in fam])


def _permute_mask(x: int, perm) -> int:
    return sum(1 << perm[i] for i in range(len(perm)) if x >> i & 1)


def random_meet_semilattice(rng, points: int = 6, gens: int = 4, max_size: int = 12) -> FinPoset:
    """Intersection closure of a few random subsets, grown until ``max_size``."""
    fam = {0}
    while True:
        x = rng.randrange(1, 1 << points)
        new = set(fam) | {x}
        while True:
            more = {a & b for a in new for b in new} - new
            if not more:
                break
            new |= more
        if len(new) > max_size:
            break
        fam = new
        gens -= 1
        if gens <= 0:
            break
    fam = sorted(fam)
    return FinPoset.from_order(fam, lambda x, y: x & ~y == 0, bottom=0,
                               names=[_mask_name(x) for x in fam])


# -- complete enumeration of small meet semilattices -------------------------

def _refine(down: list[int]) -> tuple:
    """Colour refinement on a poset given by down-set bitmasks.

    Returns ``(invariant, colours)``; isomorphic posets get the same
    invariant and isomorphisms preserve colours.
    """
    n = len(down)
    up = [sum(1 << j for j in range(n) if down[j] >> i & 1) for i in range(n)]
    col = [0] * n
    history = []
    while True:
        sig = []
        for i in range(n):
            below = sorted(col[j] for j in range(n) if j != i and down[i] >> j & 1)
            above = sorted(col[j] for j in range(n) if j != i and up[i] >> j & 1)
            sig.append((col[i], tuple(below), tuple(above)))
        ranks = {s: k for k, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        history.append(tuple(sorted(sig)))
        if len(set(new)) == len(set(col)) and len(history) > 1:
            return tuple(history), new
        col = new


def _isomorphic(da: list[int], ca: list[int], db: list[int], cb: list[int]) -> bool:
    n = len(da)
    order = sorted(range(n), key=lambda i: (sum(ca[j] == ca[i] for j in range(n)), ca[i]))
    img = [-1] * n
    used = [False] * n

    def rec(k):
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if used[j] or cb[j] != ca[i]:
                continue
            ok = True
            for t in order[:k]:
                u = img[t]
                if (da[i] >> t & 1) != (db[j] >> u & 1) or (da[t] >> i & 1) != (db[u] >> j & 1):
                    ok = False
                    break
            if ok:
                img[i], used[j] = j, True
                if rec(k + 1):
                    return True
                img[i], used[j] = -1, False
        return False

    return rec(0)


def _downsets(down: list[int]):
    """Down-closed sets containing the bottom, as bitmasks (topological indices)."""
    n = len(down)

    def rec(i, cur):
        if i == n:
            yield cur
            return
        yield from rec(i + 1, cur)
        if down[i] & ~(1 << i) & ~cur == 0:
            yield from rec(i + 1, cur | 1 << i)

    yield from rec(1, 1)


def meet_semilattices(max_size: int, deadline: Optional[float] = None):
    """Yield ``(size, down)`` for every meet semilattice with bottom of at most
    ``max_size`` elements, one per isomorphism class, size by size.

    ``down[i]`` is the bitmask of elements below ``i``; index 0 is the bottom
    and indices are a linear extension.  Removing a maximal element from a
    meet semilattice leaves one, so each level is grown from the previous by
    adding a maximal element over a down-set in which every principal
    down-set meets in a principal down-set.  Stops with ``TimeoutError`` once
    ``time.monotonic()`` passes ``deadline``.
    """
    import time
    level = [[1]]
    yield 1, [1]
    for n in range(2, max_size + 1):
        buckets: dict = {}
        nxt = []
        for down in level:
            index = {d: i for i, d in enumerate(down)}
            for D in _downsets(down):
                if deadline is not None and time.monotonic() > deadline:
                    raise TimeoutError(f"stopped while building size {n}")
                if any((D & d) not in index for d in down):
                    continue
                cand = down + [D | 1 << (n - 1)]
                inv, col = _refine(cand)
                bucket = buckets.setdefault(inv, [])
                if any(_isomorphic(cand, col, other, oc) for other, oc in bucket):
                    continue
                bucket.append((cand, col))
                nxt.append(cand)
                yield n, cand
        level = nxt


def poset_from_downsets(down: list[int]) -> FinPoset:
    n = len(down)
    return FinPoset([[bool(down[j] >> i & 1) for j in range(n)] for i in range(n)], bottom=0)
