"""Directed towers of embeddings and the behavior of their colimits.

A finite :class:`Tower` is evidence about an infinite one.  Nothing here
claims a limit property from finite data unless ``extrapolate`` is passed,
which declares that the observed tail repeats forever.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from . import morphisms, skeleton as sk
from .amalgamation import bouquet
from .graphs import hasse_graph
from .morphisms import MorphClass, StrataMorphism, classify
from .skeleton import INF, Skeleton, length, validate_skeleton

GRAPH_STABLE = "GRAPH_STABLE"
LENGTH_UNBOUNDED = "LENGTH_UNBOUNDED"
FINITE_DIM = "FINITE_DIM"
MIXED = "MIXED"


class TowerError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Tower:
    stages: tuple
    maps: tuple  # maps[n]: stages[n] -> stages[n + 1]
    regular_image: tuple = ()
    start_index: int = 0  # label of stages[0] in reports

    def __post_init__(self):
        stages, maps = tuple(self.stages), tuple(self.maps)
        reg = tuple(self.regular_image) or (False,) * len(maps)
        if not stages:
            raise TowerError("a tower needs at least one stage")
        if len(maps) != len(stages) - 1 or len(reg) != len(maps):
            raise TowerError("need one map and one regular_image flag per consecutive pair of stages")
        for n, m in enumerate(maps):
            if m.source != stages[n] or m.target != stages[n + 1]:
                raise TowerError(f"map {n} does not run from stage {n} to stage {n + 1}")
            c = classify(m)
            if c.cls < MorphClass.EMBEDDING:
                raise TowerError(f"map {n} is {c.cls.name} ({c.reason}); towers need embeddings")
        object.__setattr__(self, "stages", stages)
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "regular_image", tuple(bool(r) for r in reg))

    def to_json(self) -> dict:
        return {
            "start_index": self.start_index,
            "stages": [sk.to_json(s) for s in self.stages],
            "maps": [morphisms.to_json(m) for m in self.maps],
            "regular_image": list(self.regular_image),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Tower":
        stages = [sk.from_json(s) for s in data["stages"]]
        maps = [
            morphisms.from_json(m, stages[n], stages[n + 1]) for n, m in enumerate(data.get("maps", []))
        ]
        return cls(tuple(stages), tuple(maps), tuple(data.get("regular_image", ())), int(data.get("start_index", 0)))


@dataclass(frozen=True)
class LimitClassification:
    verdict: str
    stabilization_index: Optional[int] = None
    lengths: tuple = ()
    dims: tuple = ()  # max dimension per stage
    stable_graph: Optional[tuple] = None  # (vertex count, edge count)
    extrapolated: bool = False
    evidence: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "stabilization_index": self.stabilization_index,
            "lengths": list(self.lengths),
            "dims": [("inf" if d == INF else d) for d in self.dims],
            "stable_graph": list(self.stable_graph) if self.stable_graph else None,
            "extrapolated": self.extrapolated,
        }


def _chains(t: Tower) -> dict[str, list]:
    """For each last-stage stratum, its dims along the chain of preimages."""
    last = t.stages[-1]
    dims = {z: [last.labels[z].dim] for z in last.ids}
    back = {z: z for z in last.ids}  # last-stage id -> current-stage id
    for n in range(len(t.maps) - 1, -1, -1):
        pre = {tgt: src for src, (tgt, _) in t.maps[n].entries.items()}
        nxt = {}
        for z, cur in back.items():
            if cur in pre:
                nxt[z] = pre[cur]
                dims[z].insert(0, t.stages[n].labels[pre[cur]].dim)
        back = nxt
    return dims


def colimit(t: Tower, extrapolate: bool = False) -> Skeleton:
    """Union of the stages along the maps.

    With ``extrapolate``, a stratum whose dimension still grows on the last
    step of its chain is given dimension ``INF``.
    """
    last = t.stages[-1]
    push = [dict((s, tgt) for s, (tgt, _) in m.entries.items()) for m in t.maps]

    def forward(n, s):
        for m in push[n:]:
            s = m[s]
        return s

    order = set(last.leq_pairs())
    for n, st in enumerate(t.stages[:-1]):
        order |= {(forward(n, a), forward(n, b)) for a, b in st.leq_pairs()}
    labels = {}
    for z, ds in _chains(t).items():
        lab = last.labels[z]
        if extrapolate and len(ds) >= 2 and ds[-1] != INF and ds[-2] < ds[-1]:
            lab = lab.replace(dim=INF)
        labels[z] = lab
    out = Skeleton(labels, order)
    rep = validate_skeleton(out)
    if not rep.ok:
        raise TowerError(f"colimit order is not a partial order: {rep.violations}")
    return out


def is_graph_isomorphism(m: StrataMorphism) -> bool:
    """The strata map is a bijection carrying cover edges exactly onto cover edges."""
    if not (m.is_injective() and m.is_surjective()):
        return False
    gs, gt = hasse_graph(m.source), hasse_graph(m.target)
    return {(m(a), m(b)) for a, b in gs.edges} == set(gt.edges)


def _max_dim(s: Skeleton):
    return max((s.labels[x].dim for x in s.ids), default=-1)


def classify_limit(t: Tower, extrapolate: bool = False) -> LimitClassification:
    """Precedence: GRAPH_STABLE, LENGTH_UNBOUNDED, FINITE_DIM, MIXED.

    GRAPH_STABLE needs a non-empty tail of maps that are graph isomorphisms;
    the stabilization index is the label of the first stage of that tail.
    LENGTH_UNBOUNDED needs ``extrapolate`` and lengths strictly increasing
    over the last two steps (or the only step).  FINITE_DIM needs the maximal
    dimension constant over at least the last two stages.
    """
    if len(t.stages) < 2:
        raise TowerError("classify_limit needs at least two stages")
    lengths = tuple(length(s) for s in t.stages)
    dims = tuple(_max_dim(s) for s in t.stages)
    isos = [is_graph_isomorphism(m) for m in t.maps]
    k = len(isos)
    while k > 0 and isos[k - 1]:
        k -= 1
    evidence = {"graph_isomorphisms": isos}
    common = dict(lengths=lengths, dims=dims, extrapolated=extrapolate, evidence=evidence)
    if k < len(isos):
        g = hasse_graph(t.stages[-1])
        return LimitClassification(
            GRAPH_STABLE, t.start_index + k, stable_graph=(len(g.vertices), len(g.edges)), **common
        )
    window = lengths[-3:]
    if extrapolate and all(a < b for a, b in zip(window, window[1:])):
        return LimitClassification(LENGTH_UNBOUNDED, **common)
    if dims[-1] == dims[-2] and dims[-1] != INF:
        return LimitClassification(FINITE_DIM, **common)
    return LimitClassification(MIXED, **common)


# -- generator towers ----------------------------------------------------------


def sphere_stage(n: int) -> Skeleton:
    """``S^n`` stratified by two points; the regular part is ``R^n`` minus a point."""
    return Skeleton(
        {
            "zero": sk.StratumLabel(0, True),
            "inf": sk.StratumLabel(0, True),
            "reg": sk.StratumLabel(n, True, n >= 2),
        },
        [("zero", "reg"), ("inf", "reg")],
    )


def sphere_tower(steps: int) -> Tower:
    """``S^1 -> S^2 -> ... -> S^steps`` as equatorial inclusions.

    The regular stratum of ``S^n`` does not fill that of ``S^{n+1}``, so the
    maps are embeddings with regular image but not strong embeddings.
    """
    if steps < 1:
        raise TowerError("steps must be >= 1")
    stages = [sphere_stage(n) for n in range(1, steps + 1)]
    maps = [
        StrataMorphism(
            stages[k], stages[k + 1], {"zero": ("zero", True), "inf": ("inf", True), "reg": ("reg", False)}
        )
        for k in range(steps - 1)
    ]
    return Tower(tuple(stages), tuple(maps), (True,) * len(maps), start_index=1)


def _compactified(s: Skeleton) -> Skeleton:
    return Skeleton({x: s.labels[x].replace(compact=True) for x in s.ids}, s.leq_pairs())


def cone_tower(seed: Skeleton, steps: int, vertex: str = "v") -> Tower:
    """``X, c(X), c(c(X)), ...`` with ``steps + 1`` stages.

    Each stage is made compact before coning, as for the closed cone; every
    stratum ``S`` of a stage sits in the next one as ``S x R+``.
    """
    if steps < 1:
        raise TowerError("steps must be >= 1")
    stages = [seed]
    maps = []
    for _ in range(steps):
        cur = stages[-1]
        nxt = sk.cone(_compactified(cur), vertex)
        maps.append(StrataMorphism(cur, nxt, {x: (x, False) for x in cur.ids}))
        stages.append(nxt)
    return Tower(tuple(stages), tuple(maps), (False,) * steps)


def _raised(x: Skeleton, base: str, by: int) -> Skeleton:
    return Skeleton(
        {s: (lab if s == base else lab.replace(dim=lab.dim + by)) for s, lab in x.labels.items()},
        x.leq_pairs(),
    )


def bouquet_tower(x: Skeleton, base: str, k: int, steps: int) -> Tower:
    """Bouquets of ``k`` copies of ``X_n`` at ``base``, where ``X_n`` raises
    every other stratum of ``x`` by ``n`` dimensions; ``steps + 1`` stages."""
    if steps < 1:
        raise TowerError("steps must be >= 1")
    stages = [bouquet(_raised(x, base, n), base, k) for n in range(steps + 1)]
    maps = [
        StrataMorphism(a, b, {s: (s, s == base) for s in a.ids}) for a, b in zip(stages, stages[1:])
    ]
    return Tower(tuple(stages), tuple(maps), (True,) * steps)


__all__ = [
    "FINITE_DIM",
    "GRAPH_STABLE",
    "LENGTH_UNBOUNDED",
    "LimitClassification",
    "MIXED",
    "Tower",
    "TowerError",
    "bouquet_tower",
    "classify_limit",
    "colimit",
    "cone_tower",
    "is_graph_isomorphism",
    "sphere_stage",
    "sphere_tower",
]
