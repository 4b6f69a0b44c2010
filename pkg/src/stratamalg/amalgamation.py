"""Amalgamated sums of skeletons along strong embeddings.

Given strong embeddings ``f: X -> W`` and ``h: X -> Y`` the amalgam
``W ∪_X Y`` has one stratum per class of ``W ⊔ Y`` under ``f(x) ~ h(x)``,
and its order is the transitive closure of the two images.  Both legs are
again strong embeddings, and the square commutes on the nose.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from . import graphs, kernels
from .generators import (
    all_posets,
    random_skeleton,
    random_strong_cospan,
    random_strong_embedding,
    sub_rng,
)
from .morphisms import (
    MorphClass,
    StrataMorphism,
    classify,
    compose,
    is_closed_embedding,
)
from .skeleton import (
    Skeleton,
    SkeletonError,
    StratumLabel,
    disjoint_union,
    fresh_id,
    minimal_strata,
    validate_skeleton,
)


class AmalgamationError(ValueError):
    pass


class LabelConflict(AmalgamationError):
    def __init__(self, stratum_w: str, stratum_y: str, lw: StratumLabel, ly: StratumLabel):
        self.strata = (stratum_w, stratum_y)
        super().__init__(
            f"label conflict identifying {stratum_w!r} with {stratum_y!r}: {lw.key()} != {ly.key()}"
        )


@dataclass(frozen=True, eq=False)
class PushoutResult:
    amalgam: Skeleton
    left_leg: StrataMorphism  # W -> amalgam
    right_leg: StrataMorphism  # Y -> amalgam
    identification: dict  # ("W", id) / ("Y", id) -> amalgam id
    f: Optional[StrataMorphism] = field(default=None)  # X -> W
    h: Optional[StrataMorphism] = field(default=None)  # X -> Y


def _require_strong(m: StrataMorphism, name: str) -> None:
    c = classify(m)
    if c.cls < MorphClass.STRONG_EMBEDDING:
        raise AmalgamationError(
            f"{name} is {c.cls.name}, amalgamation needs strong embeddings ({c.reason})"
        )


def joint_embedding(a: Skeleton, b: Skeleton) -> tuple[Skeleton, StrataMorphism, StrataMorphism]:
    """``a ⊔ b`` with both inclusion legs."""
    u = disjoint_union(a, b)
    left = StrataMorphism(a, u.skeleton, {x: (u.left[x], True) for x in a.ids})
    right = StrataMorphism(b, u.skeleton, {y: (u.right[y], True) for y in b.ids})
    return u.skeleton, left, right


def pushout(f: StrataMorphism, h: StrataMorphism) -> PushoutResult:
    if f.source != h.source:
        raise AmalgamationError("f and h must share their source")
    _require_strong(f, "f")
    _require_strong(h, "h")
    w, y = f.target, h.target
    partner = {h(x): f(x) for x in f.source.ids}  # Y stratum -> W stratum
    ident: dict[tuple[str, str], str] = {("W", s): s for s in w.ids}
    taken = set(w.ids)
    for s in y.ids:
        if s in partner:
            t = partner[s]
            lw, ly = w.labels[t], y.labels[s]
            if lw.key() != ly.key():
                raise LabelConflict(t, s, lw, ly)
            ident["Y", s] = t
        else:
            nid = fresh_id(s, taken)
            taken.add(nid)
            ident["Y", s] = nid
    strata = {s: w.labels[s] for s in w.ids}
    for s in y.ids:
        strata.setdefault(ident["Y", s], y.labels[s])
    order = [(a, b) for a, b in w.leq_pairs()]
    order += [(ident["Y", a], ident["Y", b]) for a, b in y.leq_pairs()]
    amalgam = Skeleton(strata, order)
    rep = validate_skeleton(amalgam)
    if not rep.ok:
        raise AmalgamationError(f"amalgam is not a partial order: {', '.join(rep.violations)}")
    left = StrataMorphism(w, amalgam, {s: (ident["W", s], True) for s in w.ids})
    right = StrataMorphism(y, amalgam, {s: (ident["Y", s], True) for s in y.ids})
    return PushoutResult(amalgam, left, right, ident, f, h)


# -- universal property --------------------------------------------------------


@dataclass(frozen=True)
class UniversalReport:
    verdict: str  # PASS | FAIL | INDETERMINATE
    targets: int = 0
    cocones: int = 0
    counterexample: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


def _self_mediators(p: PushoutResult, limit: int = 2) -> int:
    """Count maps ``phi: P -> P`` fixing both legs (should be one: identity)."""
    am = p.amalgam
    forced: dict[str, str] = {}
    for leg in (p.left_leg, p.right_leg):
        for s, (t, _) in leg.entries.items():
            forced[t] = t
    free = [z for z in am.ids if z not in forced]
    count = 0

    def rec(k, cur):
        nonlocal count
        if count >= limit:
            return
        if k == len(free):
            count += 1
            return
        z = free[k]
        for v in am.ids:
            cur[z] = v
            if all(
                (not am.leq(a, b) or am.leq(cur[a], cur[b]))
                for a in cur
                for b in cur
            ):
                rec(k + 1, cur)
            del cur[z]

    rec(0, dict(forced))
    return count


def verify_pushout_universal(
    p: PushoutResult,
    max_target_strata: int = 4,
    budget: int = 10_000_000,
) -> UniversalReport:
    """Check that ``p`` is a pushout in the category of strata maps.

    Every order-preserving cocone ``(Z', s, t)`` with ``s f = t h`` is
    enumerated over all posets ``Z'`` with at most ``max_target_strata``
    points (one per isomorphism class), and the order-preserving mediators
    ``phi`` with ``phi j = s`` and ``phi i = t`` are counted by brute force.
    The identity cocone into the amalgam itself is checked as well.  Running
    past ``budget`` search nodes on any single target yields ``INDETERMINATE``.
    """
    if p.f is None or p.h is None:
        raise AmalgamationError("pushout result does not carry its cospan")
    f, h = p.f, p.h
    w, y, am = f.target, h.target, p.amalgam
    fi, hi = f.indices(), h.indices()
    ji, ii = p.left_leg.indices(), p.right_leg.indices()
    targets = cocones = 0
    for z in all_posets(max_target_strata):
        status, seen, wit = kernels.universal_check(
            len(am), am.leq_matrix,
            len(w), w.leq_matrix,
            len(y), y.leq_matrix,
            fi, hi, ji, ii,
            len(z), z.leq_matrix,
            budget,
        )
        targets += 1
        cocones += seen
        if status == kernels.EXHAUSTED:
            return UniversalReport("INDETERMINATE", targets, cocones)
        if status == kernels.FAIL:
            s_map, t_map, count = wit
            return UniversalReport(
                "FAIL",
                targets,
                cocones,
                {
                    "target": {
                        "strata": list(z.ids),
                        "covers": [list(e) for e in z.cover_pairs()],
                    },
                    "s": {w.ids[k]: z.ids[v] for k, v in enumerate(s_map)},
                    "t": {y.ids[k]: z.ids[v] for k, v in enumerate(t_map)},
                    "mediators": count,
                },
            )
    n_self = _self_mediators(p)
    if n_self != 1:
        return UniversalReport(
            "FAIL", targets, cocones, {"target": "amalgam", "mediators": n_self}
        )
    return UniversalReport("PASS", targets, cocones + 1)


# -- graph join ----------------------------------------------------------------


@dataclass(frozen=True)
class JoinCheck:
    status: str  # "true" | "false" | "NOT_APPLICABLE"
    discrepancy: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.status == "true"


def graph_join_check(f: StrataMorphism, h: StrataMorphism, p: PushoutResult) -> JoinCheck:
    """Compare the amalgam's graph with the join of the two input graphs.

    Only meaningful when ``X`` is closed in both ``W`` and ``Y``; otherwise
    the result is ``NOT_APPLICABLE``.
    """
    if not (is_closed_embedding(f) and is_closed_embedding(h)):
        return JoinCheck("NOT_APPLICABLE")
    gw, gy = graphs.hasse_graph(f.target), graphs.hasse_graph(h.target)
    jw = {s: p.identification["W", s] for s in f.target.ids}
    jy = {s: p.identification["Y", s] for s in h.target.ids}
    verts = set(jw.values()) | set(jy.values())
    edges = {(jw[a], jw[b]) for a, b in gw.edges} | {(jy[a], jy[b]) for a, b in gy.edges}
    actual = graphs.hasse_graph(p.amalgam)
    if verts != set(actual.vertices):
        odd = sorted(verts ^ set(actual.vertices))
        return JoinCheck("false", ("vertex", odd[0]))
    extra = sorted(set(actual.edges) - edges)
    if extra:
        return JoinCheck("false", ("edge not in join",) + extra[0])
    missing = sorted(edges - set(actual.edges))
    if missing:
        return JoinCheck("false", ("join edge missing",) + missing[0])
    return JoinCheck("true")


# -- bouquets ------------------------------------------------------------------


def bouquet(x: Skeleton, base: str, k: int) -> Skeleton:
    """``k`` copies of ``x`` glued along the point stratum ``base``.

    Copy ``j`` (1-based) renames every other stratum ``s`` to ``s_j``.
    """
    if k < 2:
        raise AmalgamationError("a bouquet needs k >= 2 copies")
    if base not in x:
        raise SkeletonError(f"unknown stratum {base!r}")
    if base not in minimal_strata(x) or x.labels[base].dim != 0:
        raise AmalgamationError(f"base {base!r} must be a minimal 0-dimensional stratum")
    pt = Skeleton({base: x.labels[base]})

    def copy(j):
        taken = {base}
        ren = {}
        for s in x.ids:
            if s != base:
                ren[s] = fresh_id(f"{s}_{j}", taken | set(x.ids))
                taken.add(ren[s])
        return x.relabel(ren)

    acc = copy(1)
    for j in range(2, k + 1):
        f = StrataMorphism(pt, acc, {base: (base, True)})
        h = StrataMorphism(pt, copy(j), {base: (base, True)})
        acc = pushout(f, h).amalgam
    return acc


# -- Fraisse axioms ------------------------------------------------------------


@dataclass
class GeneratorConfig:
    max_strata: int = 12
    closed: bool = False
    inject_label_conflict: bool = False


@dataclass
class AxiomReport:
    axiom: str
    iterations: int = 0
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "iterations": self.iterations, "failures": self.failures}


@dataclass
class FraisseReport:
    seed: int
    axioms: list

    @property
    def ok(self) -> bool:
        return all(not a.failures for a in self.axioms)

    def first_failure(self):
        for a in self.axioms:
            if a.failures:
                return a.axiom, a.failures[0]
        return None

    def to_json(self) -> dict:
        return {"seed": self.seed, "ok": self.ok, "axioms": [a.to_json() for a in self.axioms]}


def _conflicting(h: StrataMorphism) -> StrataMorphism:
    """Flip the compactness label of one identified stratum in ``Y``."""
    y = h.target
    victim = h(h.source.ids[0])
    lab = y.labels[victim]
    labels = dict(y.labels)
    labels[victim] = lab.replace(compact=not lab.compact)
    y2 = Skeleton(labels, y.leq_pairs())
    return StrataMorphism(h.source, y2, h.entries, h.declarations)


def _check_heritability(rng: random.Random, cfg: GeneratorConfig):
    w = random_skeleton(rng, 1, cfg.max_strata)
    x, inc = random_strong_embedding(rng, w)
    c = classify(inc)
    if c.cls < MorphClass.STRONG_EMBEDDING:
        return f"inclusion classified {c.cls.name}: {c.reason}"
    rep = validate_skeleton(x)
    if not rep.ok:
        return f"sub-skeleton invalid: {rep.violations}"
    return None


def _check_joint(rng: random.Random, cfg: GeneratorConfig):
    a = random_skeleton(rng, 0, cfg.max_strata, prefix="a")
    b = random_skeleton(rng, 0, cfg.max_strata, prefix="a")  # same prefix forces renaming
    _, left, right = joint_embedding(a, b)
    for name, leg in (("left", left), ("right", right)):
        c = classify(leg)
        if c.cls < MorphClass.STRONG_EMBEDDING:
            return f"{name} leg classified {c.cls.name}: {c.reason}"
    return None


def _check_amalgamation(rng: random.Random, cfg: GeneratorConfig):
    f, h = random_strong_cospan(rng, closed=cfg.closed)
    if cfg.inject_label_conflict and len(h.source):
        h = _conflicting(h)
    try:
        p = pushout(f, h)
    except AmalgamationError as e:
        return f"pushout failed: {e}"
    for name, leg in (("left", p.left_leg), ("right", p.right_leg)):
        c = classify(leg)
        if c.cls < MorphClass.STRONG_EMBEDDING:
            return f"{name} leg classified {c.cls.name}: {c.reason}"
    if compose(p.left_leg, f).entries != compose(p.right_leg, h).entries:
        return "square does not commute"
    return None


_AXIOMS = (
    ("heritability", _check_heritability),
    ("joint_embedding", _check_joint),
    ("amalgamation", _check_amalgamation),
)


def fraisse_check(
    config: Optional[GeneratorConfig] = None, seed: int = 0, iterations: int = 100
) -> FraisseReport:
    """Run the three axioms on ``iterations`` random instances each.

    Iteration ``i`` of axiom ``a`` draws from ``sub_rng(seed, f"{a}:{i}")``, so
    any failure can be replayed from the reported seed string.
    """
    cfg = config or GeneratorConfig()
    reports = []
    for name, check in _AXIOMS:
        rep = AxiomReport(name)
        for i in range(iterations):
            rng = sub_rng(seed, f"{name}:{i}")
            rep.iterations += 1
            msg = check(rng, cfg)
            if msg is not None:
                rep.failures.append({"seed": f"{seed}:{name}:{i}", "witness": msg})
        reports.append(rep)
    return FraisseReport(seed, reports)


__all__ = [
    "AmalgamationError",
    "AxiomReport",
    "FraisseReport",
    "GeneratorConfig",
    "JoinCheck",
    "LabelConflict",
    "PushoutResult",
    "UniversalReport",
    "bouquet",
    "fraisse_check",
    "graph_join_check",
    "joint_embedding",
    "pushout",
    "verify_pushout_universal",
]
