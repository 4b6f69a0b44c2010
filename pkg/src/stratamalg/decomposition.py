"""Decomposition of a skeleton into basic pieces, and its replay.

The pieces are the incidence neighborhoods ``U_S`` of the minimal strata,
taken in sorted id order.  Each new piece is glued to the union built so far
along their common strata, or added disjointly when they share none.  A
union of up-sets is again an up-set, so every incidence of ``x`` lives inside
a single piece and the replay reproduces ``x`` with its own ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from . import morphisms, skeleton as sk
from .amalgamation import pushout
from .graphs import is_basic
from .morphisms import StrataMorphism
from .skeleton import Skeleton, incidence_neighborhood, minimal_strata, restrict

DISJOINT = "disjoint"
PUSHOUT = "pushout"


class PlanError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PlanStep:
    kind: str  # DISJOINT | PUSHOUT
    piece: int  # index into AmalgamationPlan.pieces
    accumulated: Skeleton
    glue: Optional[Skeleton] = None
    left: Optional[StrataMorphism] = None  # glue -> accumulated
    right: Optional[StrataMorphism] = None  # glue -> piece


@dataclass(frozen=True, eq=False)
class AmalgamationPlan:
    pieces: tuple
    steps: tuple
    minimal: tuple = ()  # the stratum each piece is the neighborhood of

    def to_json(self) -> dict:
        steps = []
        for st in self.steps:
            d = {"kind": st.kind, "piece": st.piece, "accumulated": sk.to_json(st.accumulated)}
            if st.kind == PUSHOUT:
                d["glue"] = sk.to_json(st.glue)
                d["left"] = morphisms.to_json(st.left)
                d["right"] = morphisms.to_json(st.right)
            steps.append(d)
        return {
            "pieces": [sk.to_json(p) for p in self.pieces],
            "minimal": list(self.minimal),
            "steps": steps,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "AmalgamationPlan":
        try:
            pieces = tuple(sk.from_json(p) for p in data["pieces"])
            steps = []
            for d in data.get("steps", []):
                kind, k = d["kind"], int(d["piece"])
                acc = sk.from_json(d["accumulated"])
                if kind == DISJOINT:
                    steps.append(PlanStep(DISJOINT, k, acc))
                elif kind == PUSHOUT:
                    glue = sk.from_json(d["glue"])
                    steps.append(
                        PlanStep(
                            PUSHOUT,
                            k,
                            acc,
                            glue,
                            morphisms.from_json(d["left"], glue, acc),
                            morphisms.from_json(d["right"], glue, pieces[k]),
                        )
                    )
                else:
                    raise PlanError(f"unknown step kind {kind!r}")
        except (KeyError, TypeError, IndexError, ValueError) as e:
            if isinstance(e, PlanError):
                raise
            raise PlanError(f"malformed plan: {e}") from None
        return cls(pieces, tuple(steps), tuple(data.get("minimal", ())))


def _inclusion(sub: Skeleton, big: Skeleton) -> StrataMorphism:
    return StrataMorphism(sub, big, {s: (s, True) for s in sub.ids})


def decompose(x: Skeleton) -> AmalgamationPlan:
    mins = sorted(minimal_strata(x))
    pieces = tuple(restrict(x, incidence_neighborhood(x, m)) for m in mins)
    steps = []
    if not pieces:
        return AmalgamationPlan((), (), ())
    acc_ids = set(pieces[0].ids)
    for k in range(1, len(pieces)):
        acc = restrict(x, acc_ids)
        piece = pieces[k]
        common = acc_ids & set(piece.ids)
        if not common:
            steps.append(PlanStep(DISJOINT, k, acc))
        else:
            glue = restrict(x, common)
            steps.append(
                PlanStep(PUSHOUT, k, acc, glue, _inclusion(glue, acc), _inclusion(glue, piece))
            )
        acc_ids |= set(piece.ids)
    return AmalgamationPlan(pieces, tuple(steps), tuple(mins))


def replay(plan: AmalgamationPlan, trace: Optional[list] = None) -> Skeleton:
    """Fold the plan's steps; ``trace`` collects each intermediate union."""
    if not plan.pieces:
        return Skeleton({})
    acc = plan.pieces[0]
    if trace is not None:
        trace.append(acc)
    for st in plan.steps:
        piece = plan.pieces[st.piece]
        if st.kind == DISJOINT:
            acc = sk.disjoint_union(acc, piece).skeleton
        else:
            left = StrataMorphism(st.glue, acc, st.left.entries, st.left.declarations)
            right = StrataMorphism(st.glue, piece, st.right.entries, st.right.declarations)
            acc = pushout(left, right).amalgam
        if trace is not None:
            trace.append(acc)
    return acc


def pieces_are_basic(plan: AmalgamationPlan) -> bool:
    return all(is_basic(p) for p in plan.pieces)


__all__ = [
    "AmalgamationPlan",
    "DISJOINT",
    "PUSHOUT",
    "PlanError",
    "PlanStep",
    "decompose",
    "pieces_are_basic",
    "replay",
]
