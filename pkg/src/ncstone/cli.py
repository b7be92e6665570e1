"""Command-line front end.

Inputs are either a JSON file written by ``make`` or a catalog key such as
``I_3`` or ``Pair(2)+Comp(1,Z2,1)``.  Exit codes: 0 on success, 1 when a
checked property fails, 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import catalog, duality, groupoid as gpd, invsemi as isg, unitize as uz
from .groupoid import FinGroupoid
from .invsemi import FinInvSemi


class InputError(Exception):
    pass


def load(arg: str):
    """A semigroup or groupoid from a file path or a catalog key."""
    if os.path.isfile(arg):
        with open(arg) as fh:
            data = json.load(fh)
        return from_data(data)
    try:
        return catalog.build(arg)
    except KeyError as exc:
        raise InputError(f"{arg!r} is neither a file nor a catalog key") from exc


def from_data(data):
    if isinstance(data, str):
        return catalog.build(data)
    if not isinstance(data, dict) or "mul" not in data:
        raise InputError("expected a semigroup or groupoid table")
    if "identities" in data:
        return FinGroupoid.from_dict(data)
    return FinInvSemi.from_dict(data)


def _need(obj, kind):
    if not isinstance(obj, kind):
        raise InputError(f"expected a {'groupoid' if kind is FinGroupoid else 'semigroup'}")
    return obj


def _emit(obj, fmt: str) -> str:
    if fmt == "dot":
        if not isinstance(obj, FinGroupoid):
            raise InputError("dot output is only available for groupoids")
        return obj.to_dot().rstrip("\n")
    return obj.to_json()


def _load_morphism(path: str) -> duality.SemigroupMorphism:
    with open(path) as fh:
        data = json.load(fh)
    try:
        s = _need(from_data(data["source"]), FinInvSemi)
        t = _need(from_data(data["target"]), FinInvSemi)
        m = data["map"]
    except KeyError as exc:
        raise InputError(f"morphism file lacks {exc}") from exc
    if isinstance(m, dict):
        missing = [x for x in s.names if x not in m]
        if missing:
            raise InputError(f"map has no image for {missing[0]!r}")
        table = tuple(t[m[x]] for x in s.names)
    else:
        table = tuple(int(x) for x in m)
    return duality.SemigroupMorphism(s, t, table, data.get("name", "")).check()


# -- subcommands --------------------------------------------------------------

def cmd_make(args) -> str:
    return _emit(load(args.input), args.format)


def cmd_dual(args) -> str:
    s = _need(load(args.input), FinInvSemi)
    return _emit(duality.stone_groupoid(s), args.format)


def cmd_kb(args) -> str:
    g = _need(load(args.input), FinGroupoid)
    return gpd.kb(g, cap=args.cap).to_json()


def cmd_roundtrip(args) -> str:
    x = load(args.input)
    if isinstance(x, FinInvSemi):
        iso = duality.alpha(x)
        return f"pass |S|={x.size} |KB(G(S))|={iso.target.size}"
    iso = duality.beta(x, t=gpd.kb(x, cap=args.cap))
    return f"pass |G|={x.size} |G(KB(G))|={iso.target.size}"


def cmd_classify(args) -> str:
    s = _need(load(args.input), FinInvSemi)
    report = duality.verify_correspondences(s, args.input)
    if not all(c["holds"] for c in report["correspondences"]):
        raise AssertionError(json.dumps(report))
    return json.dumps(report)


def cmd_unitize(args) -> str:
    if args.input == "Ifin":
        rng = random.Random(args.seed)
        rows, agree = [], 0
        for _ in range(args.samples):
            x, y = uz.random_unitized(rng), uz.random_unitized(rng)
            xy = uz.compose_unitized(x, y)
            agree += 1
            if len(rows) < 3:
                rows.append({"x": json.loads(uz.unitized_to_json(x)), "y": json.loads(uz.unitized_to_json(y)),
                             "xy": json.loads(uz.unitized_to_json(xy))})
        return json.dumps({"host": "Ifin", "seed": args.seed, "samples": args.samples,
                           "agree": agree, "examples": rows})
    s = _need(load(args.input), FinInvSemi)
    u = uz.unitize_finite(s)
    return json.dumps({"size": u.monoid.size, "original": s.size,
                       "identity": u.monoid.names[u.monoid.identity()],
                       "embedding": list(u.embedding), "monoid": u.monoid.to_dict()})


def cmd_quotient(args) -> str:
    s = _need(load(args.input), FinInvSemi)
    try:
        gens = [s[x] for x in args.ideal]
    except (KeyError, ValueError, IndexError) as exc:
        raise InputError(f"unknown element in {args.ideal}") from exc
    q, nat = duality.quotient(s, isg.ideal_closure(s, gens))
    return json.dumps({"quotient": q.to_dict(), "map": list(nat.table)})


def cmd_dualmor(args) -> str:
    theta = _load_morphism(args.input)
    if not duality.is_callitic(theta):
        raise InputError("morphism is not callitic")
    f = duality.dual_morphism(theta)
    return json.dumps({"source": f.source.to_dict(), "target": f.target.to_dict(),
                       "map": list(f.table), "covering": gpd.is_covering_functor(f)})


COMMANDS = {
    "make": (cmd_make, "build a catalog object and print it"),
    "dual": (cmd_dual, "prime-filter groupoid of a semigroup"),
    "kb": (cmd_kb, "bisection monoid of a groupoid"),
    "roundtrip": (cmd_roundtrip, "check S = KB(G(S)) or G = G(KB(G))"),
    "classify": (cmd_classify, "property report with its groupoid counterparts"),
    "unitize": (cmd_unitize, "adjoin an identity (finite file/key, or Ifin)"),
    "quotient": (cmd_quotient, "quotient by the additive ideal generated by --ideal"),
    "dualmor": (cmd_dualmor, "dual functor of a morphism file"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncstone", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        c = sub.add_parser(name, help=help_)
        c.add_argument("input", help="JSON file or catalog key")
        c.add_argument("--format", choices=("json", "dot"), default="json")
        c.add_argument("--seed", type=int, default=0)
        c.add_argument("--cap", type=int, default=isg.SIZE_CAP)
        if name == "unitize":
            c.add_argument("--samples", type=int, default=1000)
        if name == "quotient":
            c.add_argument("--ideal", nargs="+", required=True, metavar="NAME")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = COMMANDS[args.command][0](args)
    except AssertionError as exc:
        print(f"fail: {exc}", file=sys.stderr)
        return 1
    except (InputError, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
