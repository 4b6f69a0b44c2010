"""Command-line interface.

Exit codes: 0 success or a true result, 1 a negative result, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import dsl, graphs, skeleton as sk
from .amalgamation import (
    AmalgamationError,
    GeneratorConfig,
    bouquet,
    fraisse_check,
    graph_join_check,
    pushout,
    verify_pushout_universal,
)
from .catalog import gamma
from .decomposition import AmalgamationPlan, PlanError, decompose, replay
from .limits import TowerError, bouquet_tower, classify_limit, colimit, cone_tower, sphere_tower
from .morphisms import MorphClass, MorphismError, classify
from .pseudomanifold import (
    NonClosedGluing,
    PseudoError,
    amalgamate_pseudo,
    to_json as pseudo_to_json,
    validate_pseudo,
)
from .skeleton import SkeletonError, StratumLabel

OK, NEGATIVE, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"stratamalg: {msg}", file=sys.stderr)


def _load(path: str) -> dsl.Document:
    try:
        return dsl.parse_file(path)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    except dsl.DSLError as e:
        raise InputError(f"{path}:{e}") from None


def _pick_space(doc: dsl.Document, name: Optional[str]) -> str:
    if name is not None:
        if name not in doc.spaces:
            raise InputError(f"no space named {name!r}")
        return name
    if not doc.spaces:
        raise InputError("the file declares no space")
    return next(iter(doc.spaces))


def _pick_pair(doc: dsl.Document, left: Optional[str], right: Optional[str]) -> tuple[str, str]:
    if left is None or right is None:
        free = [m for m in doc.morphisms if m not in doc.linkmap_targets()]
        chosen = [m for m in (left, right) if m is not None]
        rest = [m for m in free if m not in chosen]
        if left is None:
            left, rest = (rest[0], rest[1:]) if rest else (None, rest)
        if right is None:
            right = rest[0] if rest else None
    if left is None or right is None:
        raise InputError("need two morphisms (give --left and --right)")
    for m in (left, right):
        if m not in doc.morphisms:
            raise InputError(f"no morphism named {m!r}")
    return left, right


def _emit(obj, as_json: bool, name: str = "result") -> None:
    if as_json:
        sys.stdout.write(sk.dumps(sk.to_json(obj)))
    else:
        sys.stdout.write(dsl.format_skeleton(name, obj))


# -- subcommands ---------------------------------------------------------------


def cmd_validate(args) -> int:
    doc = _load(args.file)
    names = [args.space] if args.space else list(doc.spaces)
    bad = 0
    for n in names:
        _pick_space(doc, n)
        diags = dsl.validate_space(doc, n)
        if not diags and any(True for _ in doc.spaces[n].links):
            diags = [dsl.Diagnostic(doc.spaces[n].pos, v) for v in validate_pseudo(doc.pseudo(n)).violations]
        for d in diags:
            print(f"{args.file}:{d}", file=sys.stderr)
        bad += bool(diags)
        if not diags:
            print(f"{n}: ok")
    for m in doc.morphisms:
        try:
            doc.morphism(m)
        except MorphismError as e:
            print(f"{args.file}: morphism {m}: {e}", file=sys.stderr)
            bad += 1
    return NEGATIVE if bad else OK


def cmd_graph(args) -> int:
    doc = _load(args.file)
    name = _pick_space(doc, args.space)
    g = graphs.hasse_graph(doc.skeleton(name))
    if args.json:
        sys.stdout.write(sk.dumps(graphs.to_json(g)))
    else:
        sys.stdout.write(graphs.to_dot(g, name))
    return OK


def cmd_classify(args) -> int:
    doc = _load(args.file)
    if args.morphism is None:
        if not doc.morphisms:
            raise InputError("the file declares no morphism")
        args.morphism = next(iter(doc.morphisms))
    if args.morphism not in doc.morphisms:
        raise InputError(f"no morphism named {args.morphism!r}")
    c = classify(doc.morphism(args.morphism))
    if args.json:
        out = {"morphism": args.morphism, "class": c.cls.name, "reason": c.reason}
        out["witness"] = c.witness if isinstance(c.witness, (str, tuple, list, type(None))) else str(c.witness)
        sys.stdout.write(sk.dumps(out))
    else:
        print(f"{args.morphism}: {c.cls.name}" + (f" ({c.reason})" if c.reason else ""))
    if args.require and c.cls < MorphClass[args.require]:
        return NEGATIVE
    return OK


def cmd_amalgamate(args) -> int:
    doc = _load(args.file)
    left, right = _pick_pair(doc, args.left, args.right)
    f, h = doc.morphism(left), doc.morphism(right)
    p = pushout(f, h)
    _emit(p.amalgam, args.json, args.name)
    status = OK
    if args.verify:
        rep = verify_pushout_universal(p, args.max_target_strata, args.budget)
        print(
            f"universal property: {rep.verdict} ({rep.targets} targets, {rep.cocones} cocones)",
            file=sys.stderr,
        )
        if rep.counterexample:
            print(f"counterexample: {json.dumps(rep.counterexample)}", file=sys.stderr)
        if not rep.passed:
            status = NEGATIVE
        j = graph_join_check(f, h, p)
        print(f"graph join: {j.status}" + (f" {j.discrepancy}" if j.discrepancy else ""), file=sys.stderr)
        if j.status == "false":
            status = NEGATIVE
    return status


def cmd_bouquet(args) -> int:
    if args.file:
        doc = _load(args.file)
        x = doc.skeleton(_pick_space(doc, args.space))
    else:
        x = gamma(1)
    _emit(bouquet(x, args.base, args.k), args.json, args.name)
    return OK


def cmd_decompose(args) -> int:
    doc = _load(args.file)
    x = doc.skeleton(_pick_space(doc, args.space))
    plan = decompose(x)
    for k, (m, piece) in enumerate(zip(plan.minimal, plan.pieces)):
        print(f"piece {k}: U_{m} = {{{', '.join(piece.ids)}}}")
    for st in plan.steps:
        glue = "" if st.glue is None else " along {" + ", ".join(st.glue.ids) + "}"
        print(f"step: {st.kind} piece {st.piece}{glue}")
    if args.plan:
        with open(args.plan, "w", encoding="utf-8") as fh:
            fh.write(sk.dumps(plan.to_json()))
    return OK


def cmd_replay(args) -> int:
    try:
        with open(args.plan, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise InputError(f"{args.plan}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{args.plan}: invalid JSON: {e}") from None
    plan = AmalgamationPlan.from_json(data)
    _emit(replay(plan), args.json, args.name)
    return OK


def cmd_pseudo_validate(args) -> int:
    doc = _load(args.file)
    name = _pick_space(doc, args.space)
    rep = validate_pseudo(doc.pseudo(name))
    for v in rep.violations:
        print(f"{args.file}: {name}: {v}", file=sys.stderr)
    if rep.ok:
        print(f"{name}: ok")
    return OK if rep.ok else NEGATIVE


def cmd_pseudo_amalgamate(args) -> int:
    doc = _load(args.file)
    left, right = _pick_pair(doc, args.left, args.right)
    f, h = doc.pseudo_morphism(left), doc.pseudo_morphism(right)
    try:
        z = amalgamate_pseudo(f, h)
    except NonClosedGluing as e:
        _err(str(e))
        return NEGATIVE
    rep = validate_pseudo(z)
    if args.json:
        sys.stdout.write(sk.dumps(pseudo_to_json(z)))
    else:
        sys.stdout.write(dsl.format_document(dsl.pseudo_document(args.name, z)))
    for v in rep.violations:
        _err(f"result: {v}")
    return OK if rep.ok else NEGATIVE


def cmd_limit(args) -> int:
    if args.file:
        doc = _load(args.file)
        if args.tower not in doc.towers:
            raise InputError(f"no tower named {args.tower!r}")
        t = doc.tower(args.tower)
    elif args.tower == "sphere":
        t = sphere_tower(args.steps)
    elif args.tower == "cone":
        t = cone_tower(sk.Skeleton({"M": StratumLabel(0, True)}), args.steps)
    elif args.tower == "bouquet":
        t = bouquet_tower(gamma(1), "p", args.k, args.steps)
    else:
        raise InputError(f"unknown tower {args.tower!r} (sphere, cone, bouquet, or a tower in --file)")
    c = classify_limit(t, args.extrapolate)
    out = c.to_json()
    out["colimit"] = sk.to_json(colimit(t, args.extrapolate))
    sys.stdout.write(sk.dumps(out))
    return OK


def cmd_fraisse(args) -> int:
    cfg = GeneratorConfig(
        max_strata=args.max_strata, closed=args.closed, inject_label_conflict=args.inject_label_conflict
    )
    rep = fraisse_check(cfg, args.seed, args.iters)
    sys.stdout.write(sk.dumps([a.to_json() for a in rep.axioms]))
    return OK if rep.ok else NEGATIVE


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stratamalg", description="Skeletons of stratified spaces and their amalgams.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check every space (and its links) in a .strat file")
    p.add_argument("file")
    p.add_argument("--space")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("graph", help="associated graph of a space")
    p.add_argument("file")
    p.add_argument("--space")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="Graphviz output (default)")
    fmt.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("classify", help="classify a morphism")
    p.add_argument("file")
    p.add_argument("--morphism")
    p.add_argument("--require", choices=[c.name for c in MorphClass], help="exit 1 below this class")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("amalgamate", help="pushout of two strong embeddings")
    p.add_argument("file")
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--name", default="amalgam")
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify", action="store_true", help="check the universal property and the graph join")
    p.add_argument("--max-target-strata", type=int, default=4)
    p.add_argument("--budget", type=int, default=10_000_000)
    p.set_defaults(func=cmd_amalgamate)

    p = sub.add_parser("bouquet", help="k copies of a space glued at a point stratum")
    p.add_argument("file", nargs="?", help="defaults to the figure eight")
    p.add_argument("--space")
    p.add_argument("--base", default="p")
    p.add_argument("-k", type=int, default=2)
    p.add_argument("--name", default="bouquet")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bouquet)

    p = sub.add_parser("decompose", help="split a space into basic pieces")
    p.add_argument("file")
    p.add_argument("--space")
    p.add_argument("--plan", help="write the plan as JSON")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("replay", help="rebuild a space from a plan")
    p.add_argument("plan")
    p.add_argument("--name", default="replayed")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("pseudo-validate", help="check the link conditions of a space")
    p.add_argument("file")
    p.add_argument("--space")
    p.set_defaults(func=cmd_pseudo_validate)

    p = sub.add_parser("pseudo-amalgamate", help="amalgamate pseudomanifolds along closed strong embeddings")
    p.add_argument("file")
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--name", default="amalgam")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pseudo_amalgamate)

    p = sub.add_parser("limit", help="classify a tower of embeddings")
    p.add_argument("--tower", default="sphere", help="sphere, cone, bouquet, or a tower name with --file")
    p.add_argument("--file")
    p.add_argument("--steps", type=int, default=5)
    p.add_argument("-k", type=int, default=2)
    p.add_argument("--extrapolate", action="store_true")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("fraisse-check", help="randomized check of the three amalgamation-class axioms")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--max-strata", type=int, default=12)
    p.add_argument("--closed", action="store_true")
    p.add_argument("--inject-label-conflict", action="store_true", help="fault injection for testing")
    p.set_defaults(func=cmd_fraisse)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        _err(str(e))
    except (
        dsl.DSLError,
        SkeletonError,
        MorphismError,
        AmalgamationError,
        PseudoError,
        TowerError,
        PlanError,
    ) as e:
        _err(f"{type(e).__name__}: {e}")
    return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
