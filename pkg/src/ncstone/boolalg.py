"""Finite Boolean algebras as bitmasks over their atoms.

An element of ``FinBoolAlg(k)`` is an int in ``[0, 2**k)``; bit ``i`` set
means atom ``i`` lies below it.  Join is ``|``, meet is ``&``.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

import numpy as np

SAMPLE_SEED = 20180401
SAMPLE_TRIPLES = 4000


class BooleanStructure:
    """Any finite set with the six Boolean operations.

    Elements are ``0..size-1``.  Nothing is assumed about the operations,
    which is what makes this useful for axiom checking and for
    canonicalizing algebras presented in some other way.
    """

    def __init__(self, size, join, meet, comp, zero, one, names=None):
        self.size = size
        self.join = join
        self.meet = meet
        self.comp = comp
        self.zero = zero
        self.one = one
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(size))

    def elements(self):
        return range(self.size)

    def leq(self, x, y):
        return self.meet(x, y) == x


class FinBoolAlg(BooleanStructure):
    """The powerset algebra on ``k`` atoms."""

    def __init__(self, k: int, names=None):
        if k < 0:
            raise ValueError("atom count must be non-negative")
        self.k = k
        full = (1 << k) - 1
        super().__init__(
            1 << k,
            join=lambda x, y: x | y,
            meet=lambda x, y: x & y,
            comp=lambda x: full & ~x,
            zero=0,
            one=full,
            names=names if names is not None else [_bits_name(x) for x in range(1 << k)],
        )

    @property
    def top(self) -> int:
        return self.one

    @property
    def atoms(self) -> list[int]:
        return [1 << i for i in range(self.k)]

    def is_atom(self, x: int) -> bool:
        return x != 0 and x & (x - 1) == 0

    def leq(self, x, y):
        return x & ~y == 0

    def __repr__(self):
        return f"FinBoolAlg(k={self.k})"

    def __eq__(self, other):
        return isinstance(other, FinBoolAlg) and other.k == self.k

    def __hash__(self):
        return hash(("FinBoolAlg", self.k))

    def to_json(self) -> str:
        return json.dumps({"atoms": self.k, "names": list(self.names)})

    @classmethod
    def from_json(cls, text: str) -> "FinBoolAlg":
        data = json.loads(text)
        return cls(data["atoms"], names=data.get("names"))


def _bits_name(x: int) -> str:
    return "{" + ",".join(str(i + 1) for i in range(x.bit_length()) if x >> i & 1) + "}"


def from_subsets(ground: Sequence, subset) -> int:
    """Bitmask of ``subset`` relative to an ordered ``ground`` list."""
    pos = {g: i for i, g in enumerate(ground)}
    return sum(1 << pos[x] for x in subset)


# -- axioms ------------------------------------------------------------------

AXIOMS: dict[str, tuple[int, Callable]] = {
    "B1": (3, lambda b, x, y, z: b.join(b.join(x, y), z) == b.join(x, b.join(y, z))),
    "B2": (2, lambda b, x, y, z: b.join(x, y) == b.join(y, x)),
    "B3": (1, lambda b, x, y, z: b.join(x, b.zero) == x),
    "B4": (3, lambda b, x, y, z: b.meet(b.meet(x, y), z) == b.meet(x, b.meet(y, z))),
    "B5": (2, lambda b, x, y, z: b.meet(x, y) == b.meet(y, x)),
    "B6": (1, lambda b, x, y, z: b.meet(x, b.one) == x),
    "B7": (3, lambda b, x, y, z: b.meet(x, b.join(y, z)) == b.join(b.meet(x, y), b.meet(x, z))),
    "B8": (3, lambda b, x, y, z: b.join(x, b.meet(y, z)) == b.meet(b.join(x, y), b.join(x, z))),
    "B9": (1, lambda b, x, y, z: b.join(x, b.comp(x)) == b.one),
    "B10": (1, lambda b, x, y, z: b.meet(x, b.comp(x)) == b.zero),
}


@dataclass
class AxiomReport:
    results: dict = field(default_factory=dict)  # axiom -> None or witness tuple
    mode: str = "exhaustive"

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.results.values())

    def first_failure(self):
        for name, w in self.results.items():
            if w is not None:
                return name, w
        return None


def verify_axioms(b: BooleanStructure, mode: str = "auto", seed: int = SAMPLE_SEED,
                  samples: int = SAMPLE_TRIPLES) -> AxiomReport:
    """Check B1..B10, returning the first counterexample per axiom.

    ``mode="auto"`` is exhaustive up to 16 elements (four atoms) and
    falls back to ``samples`` random triples drawn with ``seed``.
    """
    if mode == "auto":
        mode = "exhaustive" if b.size <= 16 else "sampled"
    report = AxiomReport(mode=mode)
    elems = list(b.elements())
    if mode == "sampled":
        rng = random.Random(seed)
        triples = [tuple(rng.choice(elems) for _ in range(3)) for _ in range(samples)]
    for name, (arity, law) in AXIOMS.items():
        witness = None
        if mode == "exhaustive":
            pool = product(elems, repeat=arity)
        else:
            pool = (t[:arity] for t in triples)
        for t in pool:
            x, y, z = (tuple(t) + (b.zero, b.zero))[:3]
            if not law(b, x, y, z):
                witness = tuple(t)
                break
        report.results[name] = witness
    return report


def canonicalize(b: BooleanStructure) -> tuple[FinBoolAlg, list[int]]:
    """Map a presented finite Boolean algebra onto its atom powerset.

    Returns ``(FinBoolAlg(k), iso)`` with ``iso[x]`` the bitmask of atoms
    below ``x``.  Raises if the map is not an isomorphism.
    """
    rep = verify_axioms(b, mode="exhaustive") if b.size <= 64 else verify_axioms(b)
    if not rep.ok:
        raise ValueError(f"not a Boolean algebra: {rep.first_failure()}")
    atoms = [x for x in b.elements() if x != b.zero
             and all(y in (b.zero, x) for y in b.elements() if b.leq(y, x))]
    iso = [sum(1 << i for i, a in enumerate(atoms) if b.leq(a, x)) for x in b.elements()]
    target = FinBoolAlg(len(atoms))
    if len(set(iso)) != b.size or b.size != target.size:
        raise ValueError("atom map is not a bijection")
    for x, y in product(b.elements(), repeat=2):
        if iso[b.join(x, y)] != iso[x] | iso[y] or iso[b.meet(x, y)] != iso[x] & iso[y]:
            raise ValueError(f"atom map fails to preserve operations at {(x, y)}")
    return target, iso


# -- Boolean rings -----------------------------------------------------------

def to_ring(b: BooleanStructure, x, y):
    """Ring sum (symmetric difference) and product (meet)."""
    s = b.join(b.meet(x, b.comp(y)), b.meet(b.comp(x), y))
    return s, b.meet(x, y)


class BooleanRing:
    """A ring given by ``add``/``mul`` tables with zero and one."""

    def __init__(self, add, mul, zero, one, neg=None):
        self.add = np.asarray(add)
        self.mul = np.asarray(mul)
        self.zero = zero
        self.one = one
        n = self.add.shape[0]
        if neg is None:
            neg = [int(np.nonzero(self.add[x] == zero)[0][0]) for x in range(n)]
        self.neg = list(neg)
        self.size = n

    def sub(self, x, y):
        return int(self.add[x, self.neg[y]])


def ring_of(b: BooleanStructure) -> BooleanRing:
    n = b.size
    add = [[to_ring(b, x, y)[0] for y in range(n)] for x in range(n)]
    mul = [[b.meet(x, y) for y in range(n)] for x in range(n)]
    return BooleanRing(add, mul, b.zero, b.one)


def from_ring(r: BooleanRing, x, y):
    """Join ``x+y+xy``, meet ``xy`` and complement ``1-x``."""
    join = int(r.add[r.add[x, y], r.mul[x, y]])
    return join, int(r.mul[x, y]), r.sub(r.one, x)


def algebra_of(r: BooleanRing) -> BooleanStructure:
    return BooleanStructure(
        r.size,
        join=lambda x, y: from_ring(r, x, y)[0],
        meet=lambda x, y: int(r.mul[x, y]),
        comp=lambda x: r.sub(r.one, x),
        zero=r.zero,
        one=r.one,
    )


def ring_round_trip(b: BooleanStructure) -> bool:
    """Algebra -> ring -> algebra reproduces join, meet and complement."""
    back = algebra_of(ring_of(b))
    for x, y in product(b.elements(), repeat=2):
        if back.join(x, y) != b.join(x, y) or back.meet(x, y) != b.meet(x, y):
            return False
    return all(back.comp(x) == b.comp(x) for x in b.elements())


def ring_round_trip_from_ring(r: BooleanRing) -> bool:
    """Ring -> algebra -> ring reproduces sum and product."""
    again = ring_of(algebra_of(r))
    return bool(np.array_equal(again.add, r.add) and np.array_equal(again.mul, r.mul))


def boolean_ring_of_subsets(k: int) -> BooleanRing:
    """``(P(k), xor, and)`` built directly, independent of any algebra."""
    idx = np.arange(1 << k)
    return BooleanRing(idx[:, None] ^ idx[None, :], idx[:, None] & idx[None, :], 0, (1 << k) - 1)


def idempotent_algebra(n: int) -> BooleanStructure:
    """Idempotents of ``Z/n`` with ``e v f = e + f - ef``."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    idem = [x for x in range(n) if x * x % n == x]
    pos = {e: i for i, e in enumerate(idem)}
    st = BooleanStructure(
        len(idem),
        join=lambda i, j: pos[(idem[i] + idem[j] - idem[i] * idem[j]) % n],
        meet=lambda i, j: pos[idem[i] * idem[j] % n],
        comp=lambda i: pos[(1 - idem[i]) % n],
        zero=pos[0],
        one=pos[1],
        names=[str(e) for e in idem],
    )
    st.values = idem
    return st


# -- atoms and the finite duality -------------------------------------------

def atoms_below(b: FinBoolAlg, a: int) -> frozenset:
    return frozenset(1 << i for i in range(b.k) if a >> i & 1)


def atoms_below_is_iso(b: FinBoolAlg) -> bool:
    """Check that ``a -> atoms below a`` is an isomorphism onto P(at(B))."""
    at = frozenset(b.atoms)
    img = {a: atoms_below(b, a) for a in b.elements()}
    if len(set(img.values())) != b.size:
        return False
    if img[0] != frozenset() or img[b.top] != at:
        return False
    for x, y in product(b.elements(), repeat=2):
        if img[x | y] != img[x] | img[y] or img[x & y] != img[x] & img[y]:
            return False
        if (img[x] <= img[y]) != b.leq(x, y):
            return False
    return all(img[b.comp(x)] == at - img[x] for x in b.elements())


@dataclass(frozen=True)
class BoolHom:
    source: FinBoolAlg
    target: FinBoolAlg
    table: tuple

    def __call__(self, x: int) -> int:
        return self.table[x]

    def law_failure(self):
        """First violated homomorphism law, or ``None``."""
        s, t, m = self.source, self.target, self.table
        if len(m) != s.size or any(not 0 <= v < t.size for v in m):
            return ("shape", None)
        if m[0] != 0:
            return ("zero", 0)
        if m[s.top] != t.top:
            return ("one", s.top)
        for x, y in product(s.elements(), repeat=2):
            if m[x | y] != m[x] | m[y]:
                return ("join", (x, y))
            if m[x & y] != m[x] & m[y]:
                return ("meet", (x, y))
        return None

    def is_hom(self) -> bool:
        return self.law_failure() is None

    def compose(self, other: "BoolHom") -> "BoolHom":
        """``self`` after ``other``."""
        return BoolHom(other.source, self.target, tuple(self.table[v] for v in other.table))

    def to_json(self) -> str:
        return json.dumps({"source": self.source.k, "target": self.target.k, "map": list(self.table)})


def hom_from_atoms(source: FinBoolAlg, target: FinBoolAlg, atom_images: Sequence[int]) -> BoolHom:
    """Extend images of source atoms by joins."""
    table = []
    for x in source.elements():
        v = 0
        for i in range(source.k):
            if x >> i & 1:
                v |= atom_images[i]
        table.append(v)
    return BoolHom(source, target, tuple(table))


@dataclass(frozen=True)
class AtomMap:
    """A function from target atoms to source atoms, by atom index."""

    source: FinBoolAlg  # the algebra whose atoms are the values
    target: FinBoolAlg  # the algebra whose atoms are the arguments
    images: tuple

    def __call__(self, f: int) -> int:
        return self.images[f]


def hom_to_atom_map(theta: BoolHom) -> AtomMap:
    """``f -> the unique source atom e with f <= theta(e)``."""
    bad = theta.law_failure()
    if bad is not None:
        raise ValueError(f"not a Boolean homomorphism: {bad[0]} fails at {bad[1]}")
    s, t = theta.source, theta.target
    images = []
    for j in range(t.k):
        f = 1 << j
        hits = [i for i in range(s.k) if t.leq(f, theta(1 << i))]
        if len(hits) != 1:
            raise ValueError(f"target atom {j} lies below {len(hits)} atom images")
        images.append(hits[0])
    return AtomMap(s, t, tuple(images))


def atom_map_to_hom(alpha: AtomMap) -> BoolHom:
    """``e -> join of target atoms f with alpha(f) <= e``."""
    s, t = alpha.source, alpha.target
    if len(alpha.images) != t.k or any(not 0 <= v < s.k for v in alpha.images):
        raise ValueError("atom map must be total on target atoms")
    table = []
    for e in s.elements():
        table.append(sum(1 << j for j in range(t.k) if s.leq(1 << alpha.images[j], e)))
    return BoolHom(s, t, tuple(table))


def all_homs(s: FinBoolAlg, t: FinBoolAlg) -> list[BoolHom]:
    """All homomorphisms, one per atom map (there are ``k_s ** k_t``)."""
    return [atom_map_to_hom(AtomMap(s, t, imgs)) for imgs in product(range(s.k), repeat=t.k)]


# -- ultrafilters ------------------------------------------------------------

def principal_filter(b: FinBoolAlg, a: int) -> frozenset:
    return frozenset(x for x in b.elements() if b.leq(a, x))


def is_filter(b: FinBoolAlg, f) -> bool:
    f = frozenset(f)
    if not f:
        return False
    return all(x & y in f for x in f for y in f) and all(y in f for x in f for y in b.elements() if b.leq(x, y))


def is_prime_filter(b: FinBoolAlg, f) -> bool:
    f = frozenset(f)
    if not is_filter(b, f) or 0 in f:
        return False
    return all(x in f or y in f for x, y in product(b.elements(), repeat=2) if x | y in f)


def all_proper_filters(b: FinBoolAlg) -> list[frozenset]:
    """Every proper filter, by scanning subsets of the non-zero elements."""
    if b.size > 16:
        raise ValueError("subset scan limited to four atoms")
    elems = [x for x in b.elements() if x]
    out = []
    for mask in range(1, 1 << len(elems)):
        f = frozenset(e for i, e in enumerate(elems) if mask >> i & 1)
        if is_filter(b, f):
            out.append(f)
    return out


def ultrafilter_char(b: FinBoolAlg, f) -> BoolHom:
    """Characteristic function of an ultrafilter, as a hom to the 2-element algebra."""
    f = frozenset(f)
    atoms = [a for a in b.atoms if principal_filter(b, a) == f]
    if not atoms:
        raise ValueError("not an ultrafilter")
    two = FinBoolAlg(1)
    theta = BoolHom(b, two, tuple(1 if x in f else 0 for x in b.elements()))
    if not theta.is_hom():
        raise AssertionError("characteristic map of an ultrafilter is not a homomorphism")
    return theta


def char_to_ultrafilter(theta: BoolHom) -> frozenset:
    if theta.target.k != 1 or not theta.is_hom():
        raise ValueError("expected a homomorphism onto the 2-element algebra")
    return frozenset(x for x in theta.source.elements() if theta(x) == 1)


def prime_iff_atom(b: FinBoolAlg, a: int) -> tuple[bool, bool]:
    if a == 0:
        raise ValueError("the zero element generates the improper filter")
    pair = (is_prime_filter(b, principal_filter(b, a)), b.is_atom(a))
    if pair[0] != pair[1]:
        raise AssertionError(f"prime/atom mismatch at {a}")
    return pair


def separating_ultrafilter(b: FinBoolAlg, a: int, c: int):
    """An atom below exactly one of two distinct elements."""
    if a == c:
        raise ValueError("elements must differ")
    diff = a ^ c
    return diff & -diff
