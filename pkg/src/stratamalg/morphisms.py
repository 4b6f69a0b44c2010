"""Strata morphisms and the embedding hierarchy.

A :class:`StrataMorphism` sends every source stratum to one target stratum
and records whether the image fills that target stratum (``onto``).  The
point-level hypotheses that a skeleton cannot see (properness, injectivity
on points, being an immersion) are carried as declarations and trusted.

Classification, weakest to strongest::

    NOT_MORPHISM < MORPHISM < IMMERSION < EMBEDDING < STRONG_EMBEDDING < ISOMORPHISM

A proper 1-1 immersion is an embedding exactly when its strata map is
injective; a strong embedding additionally fills whole strata and reflects
the order, so the target stratification is not refined by the image.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional

from . import kernels
from .skeleton import Skeleton, SkeletonError, is_down_closed


class MorphClass(enum.IntEnum):
    NOT_MORPHISM = 0
    MORPHISM = 1
    IMMERSION = 2
    EMBEDDING = 3
    STRONG_EMBEDDING = 4
    ISOMORPHISM = 5


class MorphismError(ValueError):
    pass


class NotStratumPreserving(MorphismError):
    """A source stratum meets no target stratum, or more than one."""

    def __init__(self, stratum: str, targets: Iterable[str]):
        self.stratum = stratum
        self.targets = tuple(targets)
        super().__init__(
            f"no stratum-preserving map: {stratum!r} meets {list(self.targets) or 'nothing'}"
        )


@dataclass(frozen=True)
class Declarations:
    proper: bool = True
    injective_on_points: bool = True
    immersion: bool = True

    def all(self) -> bool:
        return self.proper and self.injective_on_points and self.immersion

    def __and__(self, other: "Declarations") -> "Declarations":
        return Declarations(
            self.proper and other.proper,
            self.injective_on_points and other.injective_on_points,
            self.immersion and other.immersion,
        )

    def to_json(self) -> dict:
        return {
            "proper": self.proper,
            "injective": self.injective_on_points,
            "immersion": self.immersion,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Declarations":
        return cls(
            bool(data.get("proper", False)),
            bool(data.get("injective", data.get("injective_on_points", False))),
            bool(data.get("immersion", False)),
        )


NO_DECLARATIONS = Declarations(False, False, False)


@dataclass(frozen=True, eq=False)
class StrataMorphism:
    source: Skeleton
    target: Skeleton
    entries: Mapping[str, tuple[str, bool]]
    declarations: Declarations = field(default_factory=Declarations)

    def __post_init__(self):
        entries = {k: (v[0], bool(v[1])) for k, v in dict(self.entries).items()}
        for s in entries:
            if s not in self.source:
                raise MorphismError(f"entry for unknown source stratum {s!r}")
        for s, (t, _) in entries.items():
            if t not in self.target:
                raise MorphismError(f"entry {s!r} -> {t!r}: unknown target stratum")
        missing = [s for s in self.source.ids if s not in entries]
        if missing:
            raise MorphismError(f"no entry for source strata {missing}")
        object.__setattr__(self, "entries", {k: entries[k] for k in self.source.ids})

    def __call__(self, s: str) -> str:
        return self.entries[s][0]

    def onto(self, s: str) -> bool:
        return self.entries[s][1]

    def image(self) -> frozenset:
        return frozenset(t for t, _ in self.entries.values())

    def indices(self) -> list[int]:
        return [self.target.index(self.entries[s][0]) for s in self.source.ids]

    def is_injective(self) -> bool:
        return len(self.image()) == len(self.entries)

    def is_surjective(self) -> bool:
        return self.image() == frozenset(self.target.ids)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StrataMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.entries == other.entries
            and self.declarations == other.declarations
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"{s}->{t}{'!' if o else ''}" for s, (t, o) in self.entries.items())
        return f"StrataMorphism({body})"


@dataclass(frozen=True)
class Classification:
    cls: MorphClass
    witness: object = None
    reason: str = ""

    def at_least(self, c: MorphClass) -> bool:
        return self.cls >= c


def _collision(f: StrataMorphism) -> Optional[tuple[str, str]]:
    seen: dict[str, str] = {}
    for s, (t, _) in f.entries.items():
        if t in seen:
            return (seen[t], s)
        seen[t] = s
    return None


def classify(f: StrataMorphism) -> Classification:
    src, tgt = f.source, f.target
    for s, (t, onto) in f.entries.items():
        ds, dt = src.labels[s].dim, tgt.labels[t].dim
        if onto and ds != dt:
            return Classification(MorphClass.NOT_MORPHISM, (s, t), "onto entry changes dimension")
        if not onto and ds > dt:
            return Classification(MorphClass.NOT_MORPHISM, (s, t), "entry lowers dimension")
    idx = f.indices()
    bad = kernels.order_violation(len(src), src.leq_matrix, len(tgt), tgt.leq_matrix, idx)
    if bad is not None:
        pair = (src.ids[bad[0]], src.ids[bad[1]])
        return Classification(MorphClass.NOT_MORPHISM, pair, "order not preserved")
    d = f.declarations
    if not d.immersion:
        return Classification(MorphClass.MORPHISM, None, "immersion not declared")
    if not d.all():
        return Classification(MorphClass.IMMERSION, d, "proper/1-1 not declared")
    hit = _collision(f)
    if hit is not None:
        return Classification(MorphClass.IMMERSION, hit, "strata map not injective")
    for s, (t, onto) in f.entries.items():
        if not onto:
            return Classification(MorphClass.EMBEDDING, s, "image does not fill a stratum")
    back = kernels.reflect_violation(len(src), src.leq_matrix, len(tgt), tgt.leq_matrix, idx)
    if back is not None:
        pair = (src.ids[back[0]], src.ids[back[1]])
        return Classification(MorphClass.EMBEDDING, pair, "order not reflected")
    if not f.is_surjective():
        missed = sorted(set(tgt.ids) - f.image())
        return Classification(MorphClass.STRONG_EMBEDDING, missed[0], "not surjective")
    return Classification(MorphClass.ISOMORPHISM)


def candidate_morphism(
    source: Skeleton,
    target: Skeleton,
    relation: Iterable[tuple[str, str, bool]],
    declarations: Declarations = Declarations(),
) -> StrataMorphism:
    """Build a morphism from "stratum meets stratum" data.

    ``relation`` lists every target stratum each source stratum meets.  It
    defines a morphism only when every source stratum meets exactly one;
    otherwise :class:`NotStratumPreserving` names the offending stratum.
    """
    meets: dict[str, list[tuple[str, bool]]] = {s: [] for s in source.ids}
    for s, t, onto in relation:
        if s not in meets:
            raise MorphismError(f"entry for unknown source stratum {s!r}")
        if t not in target:
            raise MorphismError(f"entry {s!r} -> {t!r}: unknown target stratum")
        meets[s].append((t, onto))
    for s, ts in meets.items():
        if len({t for t, _ in ts}) != 1:
            raise NotStratumPreserving(s, sorted({t for t, _ in ts}))
    entries = {s: (ts[0][0], all(o for _, o in ts)) for s, ts in meets.items()}
    return StrataMorphism(source, target, entries, declarations)


def classify_candidate(
    source: Skeleton,
    target: Skeleton,
    relation: Iterable[tuple[str, str, bool]],
    declarations: Declarations = Declarations(),
) -> Classification:
    try:
        f = candidate_morphism(source, target, relation, declarations)
    except NotStratumPreserving as e:
        return Classification(MorphClass.NOT_MORPHISM, e.stratum, "no stratum-preserving map")
    return classify(f)


def identity(s: Skeleton) -> StrataMorphism:
    return StrataMorphism(s, s, {x: (x, True) for x in s.ids})


def inclusion(sub: Skeleton, s: Skeleton) -> StrataMorphism:
    """Inclusion of a whole-strata sub-skeleton sharing ids with ``s``."""
    return StrataMorphism(sub, s, {x: (x, True) for x in sub.ids})


def compose(g: StrataMorphism, f: StrataMorphism) -> StrataMorphism:
    """``g after f``."""
    if f.target != g.source:
        raise MorphismError("cannot compose: target of f is not the source of g")
    entries = {}
    for s, (t, o1) in f.entries.items():
        u, o2 = g.entries[t]
        entries[s] = (u, o1 and o2)
    return StrataMorphism(f.source, g.target, entries, f.declarations & g.declarations)


def is_closed_embedding(f: StrataMorphism) -> bool:
    """Image is down-closed in the target.  Requires an embedding."""
    c = classify(f)
    if c.cls < MorphClass.EMBEDDING:
        raise MorphismError(f"not an embedding ({c.cls.name}: {c.reason})")
    return is_down_closed(f.target, f.image())


# -- isomorphism search ------------------------------------------------------


def _signatures(s: Skeleton) -> dict[str, tuple]:
    covers = s.cover_pairs()
    out_deg = {x: 0 for x in s.ids}
    in_deg = {x: 0 for x in s.ids}
    for lo, hi in covers:
        out_deg[lo] += 1
        in_deg[hi] += 1
    return {
        x: (s.labels[x].key(), len(s.up(x)), len(s.down(x)), out_deg[x], in_deg[x])
        for x in s.ids
    }


def iter_isomorphisms(a: Skeleton, b: Skeleton) -> Iterator[dict[str, str]]:
    """All label- and order-preserving bijections ``a -> b`` (backtracking)."""
    if len(a) != len(b):
        return
    sig_b: dict[tuple, list[str]] = {}
    for y, sig in _signatures(b).items():
        sig_b.setdefault(sig, []).append(y)
    sig_a = _signatures(a)
    cands = {x: sig_b.get(sig_a[x], []) for x in a.ids}
    if any(not c for c in cands.values()):
        return
    order = sorted(a.ids, key=lambda x: (len(cands[x]), x))
    assign: dict[str, str] = {}
    used: set[str] = set()

    def rec(k):
        if k == len(order):
            yield dict(assign)
            return
        x = order[k]
        for y in cands[x]:
            if y in used:
                continue
            if all(
                a.leq(x, x2) == b.leq(y, y2) and a.leq(x2, x) == b.leq(y2, y)
                for x2, y2 in assign.items()
            ):
                assign[x] = y
                used.add(y)
                yield from rec(k + 1)
                del assign[x]
                used.discard(y)

    yield from rec(0)


def find_isomorphism(a: Skeleton, b: Skeleton) -> Optional[StrataMorphism]:
    for m in iter_isomorphisms(a, b):
        return StrataMorphism(a, b, {x: (y, True) for x, y in m.items()})
    return None


def is_isomorphic(a: Skeleton, b: Skeleton) -> bool:
    return find_isomorphism(a, b) is not None


# -- JSON --------------------------------------------------------------------


def to_json(f: StrataMorphism) -> dict:
    return {
        "map": [[s, t, o] for s, (t, o) in f.entries.items()],
        "declare": f.declarations.to_json(),
    }


def from_json(data: Mapping, source: Skeleton, target: Skeleton) -> StrataMorphism:
    try:
        entries = {s: (t, bool(o)) for s, t, o in data["map"]}
    except (KeyError, ValueError, TypeError) as e:
        raise MorphismError(f"malformed morphism JSON: {e}") from None
    return StrataMorphism(source, target, entries, Declarations.from_json(data.get("declare", {})))


__all__ = [
    "Classification",
    "Declarations",
    "MorphClass",
    "MorphismError",
    "NO_DECLARATIONS",
    "NotStratumPreserving",
    "SkeletonError",
    "StrataMorphism",
    "candidate_morphism",
    "classify",
    "classify_candidate",
    "compose",
    "find_isomorphism",
    "from_json",
    "identity",
    "inclusion",
    "is_closed_embedding",
    "is_isomorphic",
    "iter_isomorphisms",
    "to_json",
]
