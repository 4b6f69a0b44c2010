"""Pseudomanifold skeletons: a base skeleton plus a link for every singular stratum.

A :class:`PseudoSkeleton` stores, for every non-maximal stratum ``S`` of its
base, the link ``L_S`` as another pseudo-skeleton.  Local triviality (charts
``U x c(L)`` around every point) cannot be read off a labeled poset; it holds
by construction for everything built with :func:`cone_pseudo`,
:func:`product_manifold`, :func:`disjoint_union_pseudo` and
:func:`amalgamate_pseudo`.  :func:`validate_pseudo` checks the recursive link
conditions and the growth of dimension along the order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Optional

from . import skeleton as sk
from .amalgamation import pushout
from .decomposition import DISJOINT, AmalgamationPlan, decompose
from .graphs import is_irreducible
from .morphisms import (
    MorphClass,
    StrataMorphism,
    classify,
    compose,
    identity,
    is_closed_embedding,
    iter_isomorphisms,
)
from .skeleton import (
    INF,
    Skeleton,
    StratumLabel,
    ValidationReport,
    fresh_id,
    length,
    maximal_strata,
    minimal_strata,
    restrict,
    validate_skeleton,
)


class PseudoError(ValueError):
    pass


class NonClosedGluing(PseudoError):
    """The glued part is not closed on one side, so links would not be compact."""

    def __init__(self, side: str, witness: Optional[tuple] = None):
        self.side = side
        self.witness = witness
        extra = f" ({witness[0]!r} lies below {witness[1]!r})" if witness else ""
        super().__init__(f"NonClosedGluing: the glued part is not closed in {side}{extra}")


@dataclass(frozen=True, eq=False)
class PseudoSkeleton:
    base: Skeleton
    links: Mapping[str, "PseudoSkeleton"] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "links", dict(sorted(dict(self.links).items())))

    def link(self, sid: str) -> Optional["PseudoSkeleton"]:
        return self.links.get(sid)

    def depth(self) -> int:
        """Nesting depth of links; 0 when there are none."""
        return 1 + max((l.depth() for l in self.links.values()), default=-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PseudoSkeleton):
            return NotImplemented
        return self.base == other.base and self.links == other.links

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"PseudoSkeleton({list(self.base.ids)}, links={sorted(self.links)})"


def manifold(sid: str = "M", dim: int = 0, compact: bool = True, connected: bool = True):
    return PseudoSkeleton(Skeleton({sid: StratumLabel(dim, compact, connected)}))


def empty_pseudo() -> PseudoSkeleton:
    return PseudoSkeleton(Skeleton({}))


def sphere(n: int, prefix: str = "s") -> PseudoSkeleton:
    """``S^n`` with its trivial stratification; ``S^0`` is two point strata."""
    if n == 0:
        return PseudoSkeleton(Skeleton({f"{prefix}0": StratumLabel(0, True), f"{prefix}1": StratumLabel(0, True)}))
    return manifold(prefix, n, True, True)


def _singular(s: Skeleton) -> list[str]:
    top = maximal_strata(s)
    return [x for x in s.ids if x not in top and s.labels[x].dim != INF]


def validate_pseudo(x: PseudoSkeleton) -> ValidationReport:
    out = list(validate_skeleton(x.base).violations)
    if out:
        return ValidationReport(tuple(out))
    b = x.base
    need = set(_singular(b))
    for s in sorted(need - set(x.links)):
        out.append(f"missing link at {s}")
    for s in sorted(set(x.links) - need):
        if s not in b:
            out.append(f"link for unknown stratum {s}")
        elif b.labels[s].dim != INF:
            out.append(f"unexpected link at maximal stratum {s}")
    lb = length(b)
    for s, l in x.links.items():
        if s not in need:
            continue
        if not len(l.base):
            out.append(f"empty link at {s}")
            continue
        if any(not l.base.labels[t].compact for t in l.base.ids):
            out.append(f"non-compact link at {s}")
        if length(l.base) >= lb:
            out.append(f"link at {s} is not shorter than the space ({length(l.base)} >= {lb})")
        out += [f"link({s}): {v}" for v in validate_pseudo(l).violations]
    for lo, hi in b.cover_pairs():
        dl, dh = b.labels[lo].dim, b.labels[hi].dim
        if INF in (dl, dh):
            continue
        if not dl < dh:
            out.append(f"dimension does not grow along {lo} < {hi} ({dl} >= {dh})")
    return ValidationReport(tuple(out))


def is_normal(x: PseudoSkeleton) -> bool:
    """Every link, at every level, has a connected base."""
    return all(is_irreducible(l.base) and is_normal(l) for l in x.links.values())


# -- constructors --------------------------------------------------------------


def cone_pseudo(l: PseudoSkeleton, vertex: str = "v") -> PseudoSkeleton:
    if any(not l.base.labels[t].compact for t in l.base.ids):
        raise PseudoError("cone needs a compact link: some stratum is not compact")
    rep = validate_pseudo(l)
    if not rep.ok:
        raise PseudoError(f"cone over an invalid pseudomanifold: {'; '.join(rep.violations)}")
    base = sk.cone(l.base, vertex)
    v = sk.cone_vertex(l.base, vertex)
    links = dict(l.links)
    if len(l.base):
        links[v] = l
    return PseudoSkeleton(base, links)


def product_manifold(m_dim: int, x: PseudoSkeleton, compact: bool = True) -> PseudoSkeleton:
    """``M x X`` for a connected ``m_dim``-manifold ``M``; links are unchanged."""
    if m_dim < 0:
        raise PseudoError("manifold dimension must be non-negative")
    labels = {
        s: lab.replace(dim=lab.dim + m_dim, compact=lab.compact and compact)
        for s, lab in x.base.labels.items()
    }
    return PseudoSkeleton(Skeleton(labels, x.base.leq_pairs()), x.links)


def disjoint_union_pseudo(a: PseudoSkeleton, b: PseudoSkeleton) -> PseudoSkeleton:
    t = sk.disjoint_union(a.base, b.base)
    links = {t.left[s]: l for s, l in a.links.items()}
    links.update({t.right[s]: l for s, l in b.links.items()})
    return PseudoSkeleton(t.skeleton, links)


def pseudo_from_base(base: Skeleton, links: Mapping[str, PseudoSkeleton]) -> PseudoSkeleton:
    """Attach the given links to the singular strata of ``base``."""
    need = set(_singular(base))
    return PseudoSkeleton(base, {s: l for s, l in links.items() if s in need})


# -- morphisms -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PseudoMorphism:
    source: PseudoSkeleton
    target: PseudoSkeleton
    carrier: StrataMorphism
    link_maps: Mapping[str, "PseudoMorphism"] = field(default_factory=dict)

    def __post_init__(self):
        if self.carrier.source != self.source.base or self.carrier.target != self.target.base:
            raise PseudoError("carrier does not run between the two bases")
        maps = dict(self.link_maps)
        for s in _singular(self.source.base):
            if s not in maps:
                raise PseudoError(f"missing link map at {s}")
            m = maps[s]
            tl = self.target.links.get(self.carrier(s))
            if m.source != self.source.links.get(s) or tl is None or m.target != tl:
                raise PseudoError(f"link map at {s} does not run between the two links")
        object.__setattr__(self, "link_maps", maps)


def identity_pseudo(x: PseudoSkeleton) -> PseudoMorphism:
    return PseudoMorphism(
        x, x, identity(x.base), {s: identity_pseudo(l) for s, l in x.links.items()}
    )


def compose_pseudo(g: PseudoMorphism, f: PseudoMorphism) -> PseudoMorphism:
    carrier = compose(g.carrier, f.carrier)
    maps = {s: compose_pseudo(g.link_maps[f.carrier(s)], m) for s, m in f.link_maps.items()}
    return PseudoMorphism(f.source, g.target, carrier, maps)


def classify_pseudo(m: PseudoMorphism) -> MorphClass:
    """Weakest class among the carrier and all link maps, recursively."""
    cls = classify(m.carrier).cls
    for lm in m.link_maps.values():
        cls = min(cls, classify_pseudo(lm))
    return cls


def _left_inclusion(a: PseudoSkeleton, u: PseudoSkeleton, tag: Mapping[str, str]) -> PseudoMorphism:
    carrier = StrataMorphism(a.base, u.base, {s: (tag[s], True) for s in a.base.ids})
    return PseudoMorphism(a, u, carrier, {s: identity_pseudo(l) for s, l in a.links.items()})


# -- amalgamation --------------------------------------------------------------


def _closed_witness(f: StrataMorphism) -> Optional[tuple]:
    img = f.image()
    for t in sorted(img):
        for b in sorted(f.target.down(t)):
            if b not in img:
                return (b, t)
    return None


def amalgamate_pseudo(f: PseudoMorphism, h: PseudoMorphism) -> PseudoSkeleton:
    """``W ∪_X Y`` with links glued recursively.

    A stratum of ``X`` that is singular in ``X`` gets the amalgam of its two
    links along its link in ``X``; one that is maximal in ``X`` gets the
    disjoint union of its links in ``W`` and ``Y``.  Strata on one side keep
    their link.
    """
    if f.source != h.source:
        raise PseudoError("f and h must share their source")
    for name, m in (("f", f), ("h", h)):
        c = classify(m.carrier)
        if c.cls < MorphClass.STRONG_EMBEDDING:
            raise PseudoError(
                f"class mismatch: carrier of {name} is {c.cls.name}, needs STRONG_EMBEDDING"
            )
    for side, m in (("W", f), ("Y", h)):
        if not is_closed_embedding(m.carrier):
            raise NonClosedGluing(side, _closed_witness(m.carrier))
    x, w, y = f.source, f.target, h.target
    p = pushout(f.carrier, h.carrier)
    ident = p.identification
    links: dict[str, PseudoSkeleton] = {}
    shared = {}
    for s in x.base.ids:
        shared[ident["W", f.carrier(s)]] = s
    for s, l in w.links.items():
        z = ident["W", s]
        if z not in shared:
            links[z] = l
    for s, l in y.links.items():
        z = ident["Y", s]
        if z not in shared:
            links[z] = l
    for z, s in shared.items():
        lw = w.links.get(f.carrier(s))
        ly = h.target.links.get(h.carrier(s))
        if s in x.links:
            links[z] = amalgamate_pseudo(f.link_maps[s], h.link_maps[s])
        elif lw is not None and ly is not None:
            links[z] = disjoint_union_pseudo(lw, ly)
        elif lw is not None or ly is not None:
            links[z] = lw if lw is not None else ly
    return pseudo_from_base(p.amalgam, links)


# -- isomorphism ---------------------------------------------------------------


def pseudo_isomorphic(a: PseudoSkeleton, b: PseudoSkeleton) -> bool:
    """Base isomorphism under which every pair of links is isomorphic."""
    if a == b:
        return True
    if set(a.links) - set(a.base.ids) or set(b.links) - set(b.base.ids):
        return False
    for m in iter_isomorphisms(a.base, b.base):
        if all(
            (s in a.links) == (m[s] in b.links)
            and (s not in a.links or pseudo_isomorphic(a.links[s], b.links[m[s]]))
            for s in a.base.ids
        ):
            return True
    return False


# -- decomposition -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PseudoPlan:
    plan: AmalgamationPlan
    pieces: tuple  # PseudoSkeleton per plan piece
    links: Mapping[str, PseudoSkeleton]  # links of the decomposed space, by stratum


def _restrict_pseudo(x: PseudoSkeleton, base: Skeleton) -> PseudoSkeleton:
    return pseudo_from_base(base, {s: x.links[s] for s in base.ids if s in x.links})


def decompose_pseudo(x: PseudoSkeleton) -> PseudoPlan:
    """Base decomposition with each piece carrying its links.

    Pieces are up-sets, hence open, so links restrict unchanged.
    """
    plan = decompose(x.base)
    pieces = tuple(_restrict_pseudo(x, p) for p in plan.pieces)
    return PseudoPlan(plan, pieces, dict(x.links))


def replay_pseudo(pp: PseudoPlan) -> PseudoSkeleton:
    """Fold the plan: closed overlaps through :func:`amalgamate_pseudo`,
    other overlaps through a base pushout with the links carried over."""
    if not pp.pieces:
        return empty_pseudo()
    acc = pp.pieces[0]
    for st in pp.plan.steps:
        piece = pp.pieces[st.piece]
        if st.kind == DISJOINT:
            acc = disjoint_union_pseudo(acc, piece)
            continue
        left = StrataMorphism(st.glue, acc.base, st.left.entries)
        right = StrataMorphism(st.glue, piece.base, st.right.entries)
        if is_closed_embedding(left) and is_closed_embedding(right):
            glue = _restrict_pseudo(acc, st.glue)
            f = PseudoMorphism(glue, acc, left, {s: identity_pseudo(l) for s, l in glue.links.items()})
            h = PseudoMorphism(glue, piece, right, {s: identity_pseudo(l) for s, l in glue.links.items()})
            acc = amalgamate_pseudo(f, h)
        else:
            p = pushout(left, right)
            links = {p.identification["W", s]: l for s, l in acc.links.items()}
            for s, l in piece.links.items():
                links.setdefault(p.identification["Y", s], l)
            acc = pseudo_from_base(p.amalgam, links)
    return acc


# -- JSON ----------------------------------------------------------------------


def to_json(x: PseudoSkeleton) -> dict:
    d = sk.to_json(x.base)
    if x.links:
        d["links"] = {s: to_json(l) for s, l in x.links.items()}
    return d


def from_json(data: Mapping) -> PseudoSkeleton:
    return PseudoSkeleton(
        sk.from_json(data), {s: from_json(l) for s, l in data.get("links", {}).items()}
    )


# -- generators ----------------------------------------------------------------


def marked_sphere(n: int, point: str = "q", rest: str = "a") -> PseudoSkeleton:
    """``S^n`` with one marked point; the link of the point is ``S^{n-1}``."""
    if n < 1:
        raise PseudoError("a marked sphere needs n >= 1")
    base = Skeleton({point: StratumLabel(0, True), rest: StratumLabel(n, True)}, [(point, rest)])
    return PseudoSkeleton(base, {point: sphere(n - 1)})


def random_compact_pseudo(rng: random.Random, depth: int = 2) -> PseudoSkeleton:
    """Random compact pseudomanifold built from manifolds, marked spheres,
    products with compact manifolds, disjoint unions and closed amalgams."""
    kind = rng.choice(("manifold", "sphere", "sphere", "union", "product", "wedge"))
    if depth <= 0 or kind == "manifold":
        return manifold("m", rng.randint(0, 3), True, rng.random() < 0.8)
    if kind == "sphere":
        return marked_sphere(rng.randint(1, 3))
    if kind == "union":
        return disjoint_union_pseudo(
            random_compact_pseudo(rng, depth - 1), random_compact_pseudo(rng, depth - 1)
        )
    if kind == "product":
        return product_manifold(rng.randint(1, 2), random_compact_pseudo(rng, depth - 1))
    # two marked spheres of one dimension glued at their marked points
    n = rng.randint(1, 3)
    a, b = marked_sphere(n), marked_sphere(n, rest="b")
    pt = PseudoSkeleton(Skeleton({"q": StratumLabel(0, True)}))
    f = PseudoMorphism(pt, a, StrataMorphism(pt.base, a.base, {"q": ("q", True)}))
    h = PseudoMorphism(pt, b, StrataMorphism(pt.base, b.base, {"q": ("q", True)}))
    return amalgamate_pseudo(f, h)


def attach_fin(x: PseudoSkeleton, s: str, p: PseudoSkeleton, prefix: str = "fin"):
    """Glue ``s x c(P)`` onto ``x`` along the minimal stratum ``s``.

    Returns ``(w, inclusion)``.  ``x`` stays closed and strongly embedded, and
    the link of ``s`` grows by a disjoint copy of ``P``.
    """
    b = x.base
    if s not in minimal_strata(b):
        raise PseudoError(f"fins attach at minimal strata, {s!r} is not one")
    if any(not p.base.labels[t].compact for t in p.base.ids):
        raise PseudoError("fin link must be compact")
    taken = set(b.ids)
    ren = {}
    for t in p.base.ids:
        ren[t] = fresh_id(f"{prefix}_{t}", taken)
        taken.add(ren[t])
    ds = b.labels[s].dim
    strata = dict(b.labels)
    for t in p.base.ids:
        lab = p.base.labels[t]
        strata[ren[t]] = StratumLabel(ds + lab.dim + 1, False, lab.connected)
    order = list(b.leq_pairs())
    order += [(s, ren[t]) for t in p.base.ids]
    order += [(ren[u], ren[v]) for u, v in p.base.leq_pairs()]
    wb = Skeleton(strata, order)
    links = dict(x.links)
    for t, l in p.links.items():
        links[ren[t]] = l
    old = x.links.get(s)
    if old is None:
        links[s] = p
        link_maps = {}
    else:
        t = sk.disjoint_union(old.base, p.base)
        grown = disjoint_union_pseudo(old, p)
        links[s] = grown
        link_maps = {s: _left_inclusion(old, grown, t.left)}
    w = pseudo_from_base(wb, links)
    for r, l in x.links.items():
        if r != s:
            link_maps[r] = identity_pseudo(l)
    carrier = StrataMorphism(b, wb, {r: (r, True) for r in b.ids})
    return w, PseudoMorphism(x, w, carrier, link_maps)


def random_fin_extension(rng: random.Random, x: PseudoSkeleton, max_fins: int = 2, prefix: str = "f"):
    inc = identity_pseudo(x)
    w = x
    mins = sorted(minimal_strata(x.base))
    for k in range(rng.randint(0, max_fins) if mins else 0):
        s = rng.choice(mins)
        p = random_compact_pseudo(rng, 1)
        w, step = attach_fin(w, s, p, f"{prefix}{k}")
        inc = compose_pseudo(step, inc)
    return w, inc


def random_closed_pseudo_cospan(rng: random.Random):
    """Closed strong pseudo-embeddings ``f: X -> W`` and ``h: X -> Y``."""
    x = random_compact_pseudo(rng, 2)
    if rng.random() < 0.3:
        x = cone_pseudo(x)
    _, f = random_fin_extension(rng, x, prefix="f")
    _, h = random_fin_extension(rng, x, prefix="g")
    return f, h


__all__ = [
    "NonClosedGluing",
    "PseudoError",
    "PseudoMorphism",
    "PseudoPlan",
    "PseudoSkeleton",
    "amalgamate_pseudo",
    "attach_fin",
    "classify_pseudo",
    "compose_pseudo",
    "cone_pseudo",
    "decompose_pseudo",
    "disjoint_union_pseudo",
    "empty_pseudo",
    "from_json",
    "identity_pseudo",
    "is_normal",
    "manifold",
    "marked_sphere",
    "product_manifold",
    "pseudo_from_base",
    "pseudo_isomorphic",
    "random_closed_pseudo_cospan",
    "random_compact_pseudo",
    "replay_pseudo",
    "sphere",
    "to_json",
    "validate_pseudo",
]
