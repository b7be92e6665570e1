"""Small finite groups given by Cayley tables."""
from __future__ import annotations

from itertools import permutations, product

import numpy as np


class Group:
    """A finite group stored as a Cayley table over ``0..order-1``.

    ``table[a, b]`` is the product ``ab``.  Element 0 need not be the
    identity; it is located on construction.
    """

    def __init__(self, table, names=None):
        t = np.asarray(table, dtype=np.int64)
        n = t.shape[0]
        if t.ndim != 2 or t.shape != (n, n) or n == 0:
            raise ValueError("group table must be a non-empty square array")
        if t.min() < 0 or t.max() >= n:
            raise ValueError("group table entries out of range")
        # (ab)c == a(bc) for all triples
        left = t[t[:, :, None], np.arange(n)[None, None, :]]
        right = t[np.arange(n)[:, None, None], t[None, :, :]]
        if not np.array_equal(left, right):
            a, b, c = np.argwhere(left != right)[0]
            raise ValueError(f"table is not associative at {(int(a), int(b), int(c))}")
        ids = [e for e in range(n) if np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))]
        if not ids:
            raise ValueError("table has no identity")
        self.identity = ids[0]
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.nonzero(t[a] == self.identity)[0]
            if len(hits) != 1 or t[hits[0], a] != self.identity:
                raise ValueError(f"element {a} has no two-sided inverse")
            inv[a] = hits[0]
        t.setflags(write=False)
        inv.setflags(write=False)
        self.table = t
        self.inv = inv
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"Group(order={self.order})"


def cyclic_group(n: int) -> Group:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    idx = np.arange(n)
    return Group((idx[:, None] + idx[None, :]) % n, names=[f"g{i}" if i else "1" for i in range(n)])


def trivial_group() -> Group:
    return cyclic_group(1)


def symmetric_group(n: int) -> Group:
    """Permutations of ``range(n)``; ``p*q`` applies ``q`` first."""
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return Group(table, names=["".join(str(x + 1) for x in p) for p in perms])


def group_from_key(key: str) -> Group:
    """Parse ``Z<n>``, ``S<n>`` or ``1`` into a group."""
    key = key.strip()
    if key in ("1", "Z1", "trivial"):
        return trivial_group()
    if key[:1] in ("Z", "C") and key[1:].isdigit():
        return cyclic_group(int(key[1:]))
    if key[:1] == "S" and key[1:].isdigit():
        return symmetric_group(int(key[1:]))
    raise ValueError(f"unknown group key {key!r}")


def is_homomorphism(g: Group, h: Group, phi) -> bool:
    phi = np.asarray(phi)
    return bool(np.array_equal(phi[g.table], h.table[phi[:, None], phi[None, :]]))


def find_isomorphism(g: Group, h: Group):
    """Return an isomorphism ``g -> h`` as a tuple, or ``None``.

    Backtracks over images of a generating set; fine for the small
    groups used here.
    """
    if g.order != h.order:
        return None
    n = g.order
    gens = []
    span = {g.identity}
    for a in range(n):
        if a not in span:
            gens.append(a)
            span = _closure(g, gens)
    h_orders = [_element_order(h, b) for b in range(n)]
    for images in product(range(n), repeat=len(gens)):
        if any(h_orders[b] != _element_order(g, a) for a, b in zip(gens, images)):
            continue
        phi = _extend(g, h, gens, images)
        if phi is not None and len(set(phi)) == n and is_homomorphism(g, h, phi):
            return tuple(phi)
    return None


def _element_order(g: Group, a: int) -> int:
    k, x = 1, a
    while x != g.identity:
        x = g.mul(x, a)
        k += 1
    return k


def _closure(g: Group, gens) -> set:
    span = {g.identity}
    frontier = [g.identity]
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = g.mul(x, s)
            if y not in span:
                span.add(y)
                frontier.append(y)
    return span


def _extend(g: Group, h: Group, gens, images):
    phi = {g.identity: h.identity}
    frontier = [g.identity]
    while frontier:
        x = frontier.pop()
        for s, t in zip(gens, images):
            y = g.mul(x, s)
            v = h.mul(phi[x], t)
            if y in phi:
                if phi[y] != v:
                    return None
            else:
                phi[y] = v
                frontier.append(y)
    if len(phi) != g.order:
        return None
    return [phi[a] for a in range(g.order)]
