"""Every finite Boolean inverse semigroup with at most 15 elements, up to
isomorphism.

Such a semigroup is the bisection monoid of a finite groupoid, and the
size of that monoid is the product over connected components.  A component
on n objects with isotropy H contributes sum_k C(n,k)^2 k! |H|^k, so only
one-object groups with |H| <= 14 and the two-object pair groupoid (7) fit.
"""
from functools import lru_cache
from itertools import combinations_with_replacement, permutations

import numpy as np

from ncstone.groupoid import from_components, kb, empty_groupoid
from ncstone.groups import Group, cyclic_group, find_isomorphism, trivial_group

# number of groups of each order 1..14 (OEIS A000001)
GROUP_COUNTS = (1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2)


def direct(g: Group, h: Group) -> Group:
    m = h.order
    t = [[g.mul(a // m, b // m) * m + h.mul(a % m, b % m) for b in range(g.order * m)]
         for a in range(g.order * m)]
    return Group(t)


def semidirect(m: int, n: int, r: int) -> Group:
    """Z_m by Z_n with the generator acting as multiplication by r."""
    els = [(a, b) for a in range(m) for b in range(n)]
    pos = {x: i for i, x in enumerate(els)}
    return Group([[pos[((a1 + pow(r, b1, m) * a2) % m, (b1 + b2) % n)] for (a2, b2) in els]
                  for (a1, b1) in els])


def perm_closure(gens) -> Group:
    ident = tuple(range(len(gens[0])))
    seen, frontier = {ident}, [ident]
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = tuple(p[g[i]] for i in range(len(g)))
            if q not in seen:
                seen.add(q)
                frontier.append(q)
    els = sorted(seen)
    pos = {p: i for i, p in enumerate(els)}
    return Group([[pos[tuple(p[q[i]] for i in range(len(q)))] for q in els] for p in els])


def quaternion() -> Group:
    # units +-1, +-i, +-j, +-k as (sign, letter)
    letters = "1ijk"
    prod = {("1", x): (1, x) for x in letters}
    prod.update({(x, "1"): (1, x) for x in letters})
    prod.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    els = [(s, x) for s in (1, -1) for x in letters]
    pos = {e: i for i, e in enumerate(els)}

    def mul(a, b):
        s, x = prod[(a[1], b[1])]
        return pos[(a[0] * b[0] * s, x)]

    return Group([[mul(a, b) for b in els] for a in els])


def _candidates(n: int):
    yield cyclic_group(n)
    for a in range(2, n):
        if n % a == 0:
            yield direct(cyclic_group(a), cyclic_group(n // a))
            for r in range(2, a):
                if pow(r, n // a, a) == 1:
                    yield semidirect(a, n // a, r)
    if n == 8:
        yield direct(direct(cyclic_group(2), cyclic_group(2)), cyclic_group(2))
        yield quaternion()
    if n == 12:
        yield perm_closure([(1, 2, 0, 3), (1, 0, 3, 2)])


@lru_cache(maxsize=None)
def groups_of_order(n: int) -> tuple:
    reps = []
    for g in _candidates(n):
        if not any(find_isomorphism(g, h) is not None for h in reps):
            reps.append(g)
    return tuple(reps)


def _kinds(limit: int = 15):
    """(factor, component) pairs; a component is (points, group)."""
    out = [(7, (2, trivial_group()))]
    for order in range(1, limit):
        for g in groups_of_order(order):
            out.append((order + 1, (1, g)))
    return out


def all_hosts(limit: int = 15):
    """Yield ``(description, semigroup)`` for each class with at most ``limit`` elements."""
    yield "{0}", kb(empty_groupoid())
    kinds = _kinds(limit)
    for r in range(1, limit.bit_length()):
        for combo in combinations_with_replacement(range(len(kinds)), r):
            size = int(np.prod([kinds[i][0] for i in combo]))
            if size > limit:
                continue
            comps = tuple(kinds[i][1] for i in combo)
            desc = "+".join(f"Pair(2)" if c[0] == 2 else f"G{c[1].order}" for c in comps)
            yield desc, kb(from_components(comps))
