"""Which morphisms have duals, and what quotients by additive ideals look like."""
from ncstone import catalog, duality as du, groupoid as gpd, invsemi as isg

for m in catalog.morphisms()[:10]:
    proper, wmp = du.is_proper_morphism(m), du.is_weakly_meet_preserving(m)
    print(f"{m.name:28s} proper={proper!s:5s} wmp={wmp!s:5s} ideal-induced={du.is_ideal_induced(m)}")

s = catalog.semigroup("I_2xI_2")
print("\nadditive ideals of I_2xI_2 by size:", sorted(len(i) for i in isg.additive_ideals(s)))
for ideal in isg.additive_ideals(s):
    q, nat = du.quotient(s, ideal)
    print(f"  kill {len(ideal):2d} elements -> quotient of size {q.size}")

theta = catalog.quotient_maps("I_2xI_2")[1]
star = du.dual_morphism(theta)
print(f"\ndual of {theta.name}: {star.source.size} arrows -> {star.target.size} arrows,",
      "covering:", gpd.is_covering_functor(star))
print("round trips:", du.morphism_round_trip(theta), du.functor_round_trip(star))

try:
    du.dual_morphism(catalog.collapse_group())
except ValueError as exc:
    print("\ncollapse has no dual:", exc)
