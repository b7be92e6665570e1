"""From a Boolean inverse semigroup to its groupoid of prime filters and back."""
from ncstone import catalog, duality as du, groupoid as gpd, invsemi as isg

s = catalog.semigroup("I_3")
print(f"I_3 has {s.size} elements, {len(isg.atoms(s))} atoms")

# each prime filter is the up-set of an atom
filters = du.prime_filters(s)
g = du.stone_groupoid(s)
print(f"prime filters: {len(filters)}; groupoid identities: {len(g.identities)}")
print("components:", [len(c) for c in gpd.connected_components(g)])

iso = du.alpha(s)
print(f"bisections of the groupoid: {iso.target.size} (alpha is a bijection)")

a = s["[1->2,2->3]"]
print(f"{s.names[a]} lies in the filters of:", [g.names[i] for i in du.u_indices(s, g, a)])

# the other direction: start from a groupoid
h = catalog.groupoid("Comp(2,Z2,2)")
k = gpd.kb(h)
print(f"Comp(2,Z2,2): {h.size} arrows, {k.size} bisections,",
      "same as Rook(2,Z2):", isg.find_isomorphism(k, catalog.semigroup("Rook(2,Z2)")) is not None)
print("beta recovers", du.beta(h).target.size, "arrows")
