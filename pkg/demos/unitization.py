"""Adjoining an identity, finitely and symbolically."""
import random

from ncstone import catalog, unitize as uz
from ncstone.unitize import FinSupportPB, Inner, Outer

s = catalog.semigroup("Rook(2,Z2)")
u = uz.unitize_finite(s)
print(f"Rook(2,Z2): {s.size} elements, unitized: {u.monoid.size}")
x = next(iter(u.decompositions))
e, exe = u.decompositions[x]
print(f"{u.monoid.names[x]} splits as complement of {u.monoid.names[e]} joined with {u.monoid.names[exe]}")

# finite-support partial bijections of the naturals, plus cofinite identities
swap = Outer(frozenset({0, 1}), FinSupportPB.of({0: 1, 1: 0}))
a = Inner(FinSupportPB.of({0: 5, 3: 0}))
print("swap * a =", uz.compose_unitized(swap, a))
print("a * swap =", uz.compose_unitized(a, swap))

rng = random.Random(1)
for _ in range(3):
    x, y = uz.random_unitized(rng, window=5), uz.random_unitized(rng, window=5)
    print(uz.unitized_to_json(uz.compose_unitized(x, y)))

for n in (1, 2, 3):
    print(f"units of I_{n}: group of order", uz.group_of_units(catalog.semigroup(f"I_{n}")).group.order)
r = uz.units_vs_full_group(catalog.groupoid("Pair(3)"))
print("Pair(3): full group", r.full_group_order, "units", r.units_order, "isomorphic", r.isomorphic)
