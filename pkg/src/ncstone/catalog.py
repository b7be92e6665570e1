"""Named constructions and the standard instance lists.

Semigroup keys: ``I_3``, ``GZ(Z2)``, ``Rook(2,Z2)``, ``Sub(I_3,4)``,
``Zero``, ``Chain(3)`` and products such as ``I_2xI_2`` (``x`` or ``×``).
``Sub(S,k)`` is the Boolean subalgebra generated by one element of ``S``
drawn with seed ``k``.
Groupoid keys: ``Pair(3)``, ``Comp(2,Z2,2)``, ``Disc(2)``, ``Empty`` and
disjoint unions joined with ``+``.
"""
from __future__ import annotations

import re
from functools import lru_cache


from . import invsemi as isg
from .duality import SemigroupMorphism, quotient
from .groupoid import FinGroupoid, empty_groupoid, from_components
from .groups import group_from_key, trivial_group
from .invsemi import FinInvSemi

SUB_SEEDS = (0, 1, 3, 6, 7)


def _split_top(key: str, seps) -> list[str]:
    """Split on separators that are not inside parentheses."""
    parts, depth, cur = [], 0, ""
    i = 0
    while i < len(key):
        ch = key[i]
        depth += ch == "("
        depth -= ch == ")"
        hit = next((s for s in seps if depth == 0 and key.startswith(s, i)), None)
        if hit:
            parts.append(cur)
            cur = ""
            i += len(hit)
            continue
        cur += ch
        i += 1
    parts.append(cur)
    return [p.strip() for p in parts]


@lru_cache(maxsize=None)
def semigroup(key: str) -> FinInvSemi:
    key = key.strip()
    parts = _split_top(key, ("×", " x ", "x"))
    if len(parts) > 1 and all(parts):
        out = semigroup(parts[0])
        for p in parts[1:]:
            out = isg.direct_product(out, semigroup(p))
        return out
    m = re.fullmatch(r"I_?(\d+)", key)
    if m:
        return isg.symmetric_inverse_monoid(int(m.group(1)))
    m = re.fullmatch(r"GZ\((\w+)\)", key)
    if m:
        return isg.group_with_zero(group_from_key(m.group(1)))
    m = re.fullmatch(r"Rook\((\d+),\s*(\w+)\)", key)
    if m:
        return isg.rook_matrices(int(m.group(1)), group_from_key(m.group(2)))
    m = re.fullmatch(r"Sub\((.+),\s*(\d+)\)", key)
    if m:
        return isg.random_subalgebra(semigroup(m.group(1)), int(m.group(2)), k=1)[0]
    m = re.fullmatch(r"Chain\((\d+)\)", key)
    if m:
        return isg.semilattice_chain(int(m.group(1)))
    if key == "Zero":
        return isg.zero_semigroup()
    raise KeyError(f"unknown semigroup key {key!r}")


@lru_cache(maxsize=None)
def groupoid(key: str) -> FinGroupoid:
    key = key.strip()
    if key == "Empty":
        return empty_groupoid()
    return from_components(tuple(_components(key)))


def _components(key: str) -> list:
    comps = []
    for part in _split_top(key, ("+",)):
        m = re.fullmatch(r"Pair\((\d+)\)", part)
        if m:
            comps.append((int(m.group(1)), trivial_group()))
            continue
        m = re.fullmatch(r"Comp\((\d+),\s*(\w+),\s*(\d+)\)", part)
        if m:
            if m.group(1) != m.group(3):
                raise KeyError("Comp(m,G,m) needs matching point counts")
            comps.append((int(m.group(1)), group_from_key(m.group(2))))
            continue
        m = re.fullmatch(r"Disc\((\d+)\)", part)
        if m:
            comps.extend([(1, trivial_group())] * int(m.group(1)))
            continue
        raise KeyError(f"unknown groupoid key {part!r}")
    return comps


def is_groupoid_key(key: str) -> bool:
    return bool(re.match(r"\s*(Pair|Comp|Disc|Empty)", key))


def build(key: str):
    return groupoid(key) if is_groupoid_key(key) else semigroup(key)


SEMIGROUPS = ("I_1", "I_2", "I_3", "GZ(Z2)", "GZ(Z3)", "Rook(2,Z2)", "I_2xI_2") + \
    tuple(f"Sub(I_3,{k})" for k in SUB_SEEDS)

GROUPOIDS = ("Pair(1)", "Pair(2)", "Pair(3)", "Pair(4)",
             "Comp(1,Z2,1)", "Comp(1,Z3,1)", "Comp(2,Z2,2)", "Comp(2,Z3,2)",
             "Pair(1)+Pair(1)", "Pair(2)+Pair(1)", "Pair(2)+Pair(2)", "Pair(3)+Pair(2)",
             "Comp(2,Z2,2)+Pair(1)", "Pair(2)+Comp(1,Z3,1)", "Comp(1,Z2,1)+Comp(1,Z3,1)")


# -- morphisms ---------------------------------------------------------------

def by_names(s: FinInvSemi, t: FinInvSemi, pairs: dict, name: str = "") -> SemigroupMorphism:
    return SemigroupMorphism(s, t, tuple(t[pairs[x]] for x in s.names), name)


def projection(key_a: str, key_b: str, which: int = 0) -> SemigroupMorphism:
    a, b = semigroup(key_a), semigroup(key_b)
    p = semigroup(f"{key_a}x{key_b}")
    table = tuple(lab[which] for lab in p.labels)
    return SemigroupMorphism(p, (a, b)[which], table, f"pr{which + 1}:{key_a}x{key_b}").check()


def collapse_group() -> SemigroupMorphism:
    """``Z2`` with zero onto ``I_1``: the group collapses to the identity."""
    s, t = semigroup("GZ(Z2)"), semigroup("I_1")
    return SemigroupMorphism(s, t, tuple(t.zero if x == s.zero else t["[1->1]"] for x in range(s.size)),
                             "collapse:GZ(Z2)->I_1").check()


def corner_inclusion() -> SemigroupMorphism:
    """``I_1`` into ``I_2`` on the first point; misses the full identity."""
    s, t = semigroup("I_1"), semigroup("I_2")
    return by_names(s, t, {"0": "0", "[1->1]": "[1->1]"}, "corner:I_1->I_2").check()


def forget_labels() -> SemigroupMorphism:
    """Rook matrices over ``Z2`` onto ``I_2`` by dropping labels."""
    s, t = semigroup("Rook(2,Z2)"), semigroup("I_2")
    pos = {lab.images: i for i, lab in enumerate(t.labels)}
    return SemigroupMorphism(s, t, tuple(pos[lab.images] for lab in s.labels), "forget:Rook(2,Z2)->I_2").check()


def conjugation(n: int = 2) -> SemigroupMorphism:
    """Conjugation of ``I_n`` by the transposition of the first two points."""
    s = semigroup(f"I_{n}")
    swap = isg.PartialBijection(tuple([1, 0] + list(range(2, n))))
    pos = {lab: i for i, lab in enumerate(s.labels)}
    table = tuple(pos[swap * lab * swap.inverse()] for lab in s.labels)
    return SemigroupMorphism(s, s, table, f"swap:I_{n}").check()


def quotient_maps(key: str, limit: int = 4) -> list[SemigroupMorphism]:
    """Natural maps onto quotients by the first few additive ideals."""
    s = semigroup(key)
    out = []
    for ideal in isg.additive_ideals(s)[:limit]:
        q, nat = quotient(s, ideal)
        out.append(SemigroupMorphism(s, q, nat.table, f"quot:{key}/{len(ideal)}"))
    return out


def morphisms() -> list[SemigroupMorphism]:
    """Morphisms between catalog semigroups, callitic or not."""
    from .duality import identity_morphism
    out = [identity_morphism(semigroup("I_2")), identity_morphism(semigroup("Rook(2,Z2)")),
           projection("I_2", "I_2", 0), projection("I_2", "I_2", 1),
           projection("I_1", "I_2", 1), collapse_group(), corner_inclusion(), forget_labels(),
           conjugation(2), conjugation(3)]
    for key in ("I_2xI_2", "I_2", "GZ(Z2)", "I_1xI_1xI_1"):
        out.extend(quotient_maps(key))
    return out
