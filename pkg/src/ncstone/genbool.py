"""Generalized Boolean algebras: distributive lattices with relative complements.

Four instances share one small contract (``zero``, ``leq``, ``meet``,
``join``, ``relcomplement``):

* ``SubsetGBA(n)``     subsets of ``{0..n-1}`` as bitmasks, finite
* ``FiniteSetsGBA()``  all finite subsets of the naturals, symbolic
* ``FinCofin()``       finite and cofinite subsets of the naturals, symbolic
* ``PosetLattice``     any finite lattice; relative complements may not exist
"""
from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass
from itertools import product
from typing import Optional

import numpy as np

from .order import FinPoset, all_filters

WINDOW = 16
SAMPLE_SEED = 7


class GBA:
    """Operation contract.  Subclasses fill in the five operations."""

    unital = False
    finite = False

    def zero(self):
        raise NotImplementedError

    def leq(self, x, y) -> bool:
        return self.meet(x, y) == x

    def meet(self, x, y):
        raise NotImplementedError

    def join(self, x, y):
        raise NotImplementedError

    def relcomplement(self, x, y):
        raise NotImplementedError

    def elements(self):
        raise TypeError(f"{type(self).__name__} is not finite")

    def sample(self, rng: random.Random, window: int = WINDOW):
        raise NotImplementedError


class SubsetGBA(GBA):
    finite = True
    unital = True

    def __init__(self, n: int):
        self.n = n
        self.top = (1 << n) - 1

    def zero(self):
        return 0

    def leq(self, x, y):
        return x & ~y == 0

    def meet(self, x, y):
        return x & y

    def join(self, x, y):
        return x | y

    def relcomplement(self, x, y):
        return x & ~y

    def elements(self):
        return range(1 << self.n)

    def sample(self, rng, window=WINDOW):
        return rng.randrange(1 << self.n)

    def __repr__(self):
        return f"SubsetGBA({self.n})"


class FiniteSetsGBA(GBA):
    """Finite subsets of the naturals as frozensets; there is no top."""

    def zero(self):
        return frozenset()

    def leq(self, x, y):
        return x <= y

    def meet(self, x, y):
        return x & y

    def join(self, x, y):
        return x | y

    def relcomplement(self, x, y):
        return x - y

    def sample(self, rng, window=WINDOW):
        return frozenset(i for i in range(window) if rng.random() < 0.3)

    def __repr__(self):
        return "FiniteSetsGBA()"


@dataclass(frozen=True)
class FC:
    """A finite set (``kind="fin"``) or the complement of one (``kind="cofin"``)."""

    kind: str
    support: frozenset

    def __post_init__(self):
        if self.kind not in ("fin", "cofin"):
            raise ValueError(f"unknown kind {self.kind!r}")
        object.__setattr__(self, "support", frozenset(self.support))
        if any(not isinstance(i, int) or i < 0 for i in self.support):
            raise ValueError("support must hold natural numbers")

    def __contains__(self, n: int) -> bool:
        return (n in self.support) == (self.kind == "fin")

    def __repr__(self):
        name = "Fin" if self.kind == "fin" else "Cofin"
        return f"{name}{{{','.join(map(str, sorted(self.support)))}}}"

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, "support": sorted(self.support)})

    @classmethod
    def from_json(cls, text: str) -> "FC":
        data = json.loads(text)
        return cls(data["kind"], frozenset(data["support"]))


def Fin(*xs) -> FC:
    return FC("fin", frozenset(xs))


def Cofin(*xs) -> FC:
    return FC("cofin", frozenset(xs))


class FinCofin(GBA):
    """Finite and cofinite subsets of the naturals; a unital Boolean algebra."""

    unital = True

    def zero(self):
        return Fin()

    @property
    def top(self):
        return Cofin()

    def complement(self, x: FC) -> FC:
        return FC("cofin" if x.kind == "fin" else "fin", x.support)

    def meet(self, x: FC, y: FC) -> FC:
        if x.kind == "fin" and y.kind == "fin":
            return FC("fin", x.support & y.support)
        if x.kind == "fin":
            return FC("fin", x.support - y.support)
        if y.kind == "fin":
            return FC("fin", y.support - x.support)
        return FC("cofin", x.support | y.support)

    def join(self, x: FC, y: FC) -> FC:
        return self.complement(self.meet(self.complement(x), self.complement(y)))

    def relcomplement(self, x: FC, y: FC) -> FC:
        return self.meet(x, self.complement(y))

    def sample(self, rng, window=WINDOW):
        s = frozenset(i for i in range(window) if rng.random() < 0.3)
        return FC(rng.choice(("fin", "cofin")), s)

    def __repr__(self):
        return "FinCofin()"


class PosetLattice(GBA):
    """A finite lattice given by its order; relative complements are searched for."""

    finite = True

    def __init__(self, poset: FinPoset):
        if poset.bottom is None:
            raise ValueError("lattice needs a bottom")
        n = poset.size
        self.poset = poset
        self._meet = np.full((n, n), -1, dtype=np.int64)
        self._join = np.full((n, n), -1, dtype=np.int64)
        leq = poset.leq
        down = leq.sum(axis=0)
        up = leq.sum(axis=1)
        for x, y in product(range(n), repeat=2):
            lb = np.nonzero(leq[:, x] & leq[:, y])[0]
            ub = np.nonzero(leq[x] & leq[y])[0]
            glb = [m for m in lb if down[m] >= len(lb) and leq[lb, m].all()]
            lub = [m for m in ub if up[m] >= len(ub) and leq[m, ub].all()]
            if not glb or not lub:
                raise ValueError(f"elements {x}, {y} lack a meet or a join")
            self._meet[x, y], self._join[x, y] = glb[0], lub[0]
        self.unital = True

    def zero(self):
        return self.poset.bottom

    def leq(self, x, y):
        return bool(self.poset.leq[x, y])

    def meet(self, x, y):
        return int(self._meet[x, y])

    def join(self, x, y):
        return int(self._join[x, y])

    def relcomplement(self, x, y) -> Optional[int]:
        """Complement of ``x & y`` inside ``x``-down, or ``None``."""
        m = self.meet(x, y)
        hits = [z for z in range(self.poset.size)
                if self.leq(z, x) and self.meet(z, m) == self.zero() and self.join(z, m) == x]
        return hits[0] if len(hits) == 1 else None

    def elements(self):
        return range(self.poset.size)


def chain_lattice(n: int) -> PosetLattice:
    from .order import chain
    return PosetLattice(chain(n))


def relcomplement(gba: GBA, x, y):
    """``x \\ y``, checked against the defining identities."""
    z = gba.relcomplement(x, y)
    if z is None:
        raise ValueError(f"no relative complement of {y!r} in {x!r}")
    if gba.meet(y, z) != gba.zero() or gba.join(gba.meet(x, y), z) != x:
        raise AssertionError(f"relative complement identities fail at {(x, y)}")
    return z


def interval_complement(gba: GBA, b, c, a):
    """Complement of ``c`` in the interval ``[b, a]``: ``(a \\ c) v b``."""
    if not (gba.leq(b, c) and gba.leq(c, a)):
        raise ValueError("need b <= c <= a")
    d = gba.join(gba.relcomplement(a, c), b)
    if gba.meet(c, d) != b or gba.join(c, d) != a:
        raise AssertionError("interval complement identities fail")
    return d


def _elements_for(gba: GBA, window: int, samples: int, seed: int):
    if gba.finite:
        return list(gba.elements())
    rng = random.Random(seed)
    pts = [gba.zero()] + [gba.sample(rng, window) for _ in range(samples)]
    if gba.unital:
        pts.append(gba.top)
    return pts


@dataclass
class EquivalenceReport:
    relatively_complemented: Optional[tuple]   # None, or a failing pair
    principal_ideals_boolean: Optional[tuple]  # None, or (a, x) with x lacking a complement in a-down
    intervals_complemented: Optional[tuple]    # None, or (b, c, a)
    mode: str

    @property
    def ok(self) -> bool:
        return (self.relatively_complemented is None and self.principal_ideals_boolean is None
                and self.intervals_complemented is None)

    @property
    def consistent(self) -> bool:
        flags = {self.relatively_complemented is None, self.principal_ideals_boolean is None,
                 self.intervals_complemented is None}
        return len(flags) == 1


def verify_gba_equivalences(gba: GBA, window: int = WINDOW, samples: int = 24,
                            seed: int = SAMPLE_SEED) -> EquivalenceReport:
    """Check the three equivalent conditions on a distributive lattice with 0.

    Each condition is tested on its own terms, without using the
    instance's ``relcomplement``:

    1. every pair has some ``z`` with ``y & z = 0`` and ``(x & y) v z = x``
    2. every non-zero ``a``-down is complemented
    3. every interval ``[b, a]`` is complemented
    """
    elems = _elements_for(gba, window, samples, seed)
    finite = gba.finite
    zero = gba.zero()

    def candidates(x):
        # in a finite instance search all z <= x; symbolic ones use the formula
        if finite:
            return [z for z in elems if gba.leq(z, x)]
        return [gba.relcomplement(x, y) for y in elems] + [gba.relcomplement(x, x)]

    rc = None
    for x, y in product(elems, repeat=2):
        m = gba.meet(x, y)
        pool = candidates(x) if finite else [gba.relcomplement(x, y)]
        if not any(gba.meet(y, z) == zero and gba.join(m, z) == x for z in pool):
            rc = (x, y)
            break

    pib = None
    for a in elems:
        if a == zero:
            continue
        below = [x for x in elems if gba.leq(x, a)]
        pool = candidates(a)
        for x in below:
            if not any(gba.meet(x, z) == zero and gba.join(x, z) == a for z in pool):
                pib = (a, x)
                break
        if pib:
            break

    ic = None
    for b, c, a in product(elems, repeat=3):
        if not (gba.leq(b, c) and gba.leq(c, a)):
            continue
        pool = candidates(a) if finite else [gba.join(gba.relcomplement(a, c), b)]
        if not any(gba.meet(c, d) == b and gba.join(c, d) == a for d in pool):
            ic = (b, c, a)
            break
    return EquivalenceReport(rc, pib, ic, "exhaustive" if finite else f"sampled(seed={seed})")


def as_poset(gba: GBA) -> tuple[FinPoset, list]:
    elems = list(gba.elements())
    p = FinPoset.from_order(elems, gba.leq, bottom="auto")
    return p, elems


@dataclass
class FilterTransfer:
    """Filters of ``a``-down matched with filters of the whole algebra containing ``a``."""

    local: list      # filters of a-down, as frozensets of element indices
    ambient: list    # filters containing a
    down: dict       # ambient filter -> local filter
    up: dict         # local filter -> ambient filter
    local_ultra: list
    ambient_ultra: list


def filter_transfer(gba: GBA, a) -> FilterTransfer:
    """Build and check the bijection ``F -> F & a-down``, ``G -> G-up``."""
    if a == gba.zero():
        raise ValueError("a must be non-zero")
    p, elems = as_poset(gba)
    ia = elems.index(a)
    below = sorted(p.down(ia))
    sub = FinPoset(p.leq[np.ix_(below, below)], bottom=below.index(p.bottom))
    local = [frozenset(below[i] for i in f) for f in all_filters(sub)]
    ambient = [f for f in all_filters(p) if ia in f]
    down = {f: f & p.down(ia) for f in ambient}
    up = {}
    for g in local:
        up[g] = frozenset(y for y in range(p.size) if any(p.leq[x, y] for x in g))
    if sorted(map(sorted, down.values())) != sorted(map(sorted, local)):
        raise AssertionError("restriction is not onto the local filters")
    for g in local:
        if down[up[g]] != g:
            raise AssertionError("restriction and up-closure are not inverse")

    def maximal_proper(fs, bottom):
        prop = [f for f in fs if bottom not in f]
        return [f for f in prop if not any(f < g for g in prop)]

    lu = maximal_proper(local, p.bottom)
    au = maximal_proper(ambient, p.bottom)
    if sorted(map(sorted, (up[g] for g in lu))) != sorted(map(sorted, au)):
        raise AssertionError("ultrafilters do not correspond")
    return FilterTransfer(local, ambient, down, up, lu, au)


def prime_filters_bruteforce(gba: GBA) -> tuple[list, list]:
    """Prime filters and ultrafilters of a finite instance, each found
    independently over every filter."""
    p, elems = as_poset(gba)
    filters = [f for f in all_filters(p) if p.bottom not in f]
    ix = {e: i for i, e in enumerate(elems)}
    prime = []
    for f in filters:
        ok = True
        for x, y in product(range(p.size), repeat=2):
            if ix[gba.join(elems[x], elems[y])] in f and x not in f and y not in f:
                ok = False
                break
        if ok:
            prime.append(f)
    ultra = [f for f in filters if not any(f < g for g in filters)]
    return prime, ultra


def _check_laws(theta, src: GBA, tgt: GBA, elems):
    if theta(src.zero()) != tgt.zero():
        return ("zero", src.zero())
    for x, y in product(elems, repeat=2):
        tx, ty = theta(x), theta(y)
        if theta(src.meet(x, y)) != tgt.meet(tx, ty):
            return ("meet", (x, y))
        if theta(src.join(x, y)) != tgt.join(tx, ty):
            return ("join", (x, y))
        if theta(src.relcomplement(x, y)) != tgt.relcomplement(tx, ty):
            return ("relcomplement", (x, y))
    return None


def is_proper_hom(theta, src: GBA, tgt: GBA, window: int = WINDOW, samples: int = 24,
                  seed: int = SAMPLE_SEED) -> bool:
    """Whether every element of ``tgt`` lies below some ``theta``-image.

    Finite instances are checked exhaustively.  For a symbolic source the
    images of all subsets of the window are considered; since images of
    joins are joins, it suffices to test ``t <= theta(window)``.  Symbolic
    targets are probed with sampled elements plus the top when there is one.
    """
    s_elems = _elements_for(src, window, samples, seed)
    bad = _check_laws(theta, src, tgt, s_elems)
    if bad is not None:
        raise ValueError(f"not a homomorphism: {bad[0]} fails at {bad[1]!r}")
    if src.finite:
        images = [theta(x) for x in s_elems]
    else:
        images = [theta(x) for x in s_elems]
        if isinstance(src, FiniteSetsGBA):
            images.append(theta(frozenset(range(window))))
    t_elems = _elements_for(tgt, window, samples, seed + 1)
    return all(any(tgt.leq(t, im) for im in images) for t in t_elems)


def unitize_gba(gba: GBA):
    """Embed a GBA without top into a unital Boolean algebra as an ideal.

    Returns ``(algebra, embedding)``.  The finite subsets of the naturals
    go into ``FinCofin`` with ``x -> Fin(x)``; every new element is the
    complement of an old one.
    """
    if gba.unital:
        warnings.warn(f"{gba!r} already has a top; returning the identity embedding", stacklevel=2)
        return gba, (lambda x: x)
    if isinstance(gba, FiniteSetsGBA):
        return FinCofin(), (lambda x: FC("fin", frozenset(x)))
    raise TypeError(f"no unitization available for {gba!r}")


def check_unitization(gba: GBA, window: int = WINDOW, samples: int = 40, seed: int = SAMPLE_SEED) -> bool:
    """Sampled check: embedding is an injective hom onto an order ideal, and
    every element of the big algebra is an image or the complement of one."""
    big, emb = unitize_gba(gba)
    elems = _elements_for(gba, window, samples, seed)
    if _check_laws(emb, gba, big, elems) is not None:
        return False
    if len({emb(x) for x in elems}) != len(set(elems)):
        return False
    rng = random.Random(seed)
    for _ in range(samples):
        y = big.sample(rng, window)
        x = rng.choice(elems)
        # order ideal: anything below an image is an image
        lo = big.meet(y, emb(x))
        if lo.kind != "fin":
            return False
        if y.kind == "fin":
            continue
        if big.complement(y) != emb(frozenset(y.support)):
            return False
    return True
