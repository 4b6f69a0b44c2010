"""Named example skeletons: the figure-eight curve in the plane and friends.

``gamma(k)`` is the curve with stratification ``k`` (0: the singular point
and the rest; 1: the point and both loops).  ``plane(j)`` is the plane with
stratifications ``j = 0..3`` refining up to ``{p, C1, C2, rest}``.
"""

from __future__ import annotations

from typing import NamedTuple

from .morphisms import Declarations, MorphClass
from .skeleton import Skeleton, StratumLabel, product


def _lab(dim, compact=True, connected=True):
    return StratumLabel(dim, compact, connected)


def gamma(k: int) -> Skeleton:
    if k == 0:
        return Skeleton({"p": _lab(0), "g": _lab(1, True, False)}, [("p", "g")])
    if k == 1:
        return Skeleton(
            {"p": _lab(0), "C1": _lab(1), "C2": _lab(1)}, [("p", "C1"), ("p", "C2")]
        )
    raise ValueError(f"no stratification gamma_{k}")


def plane(j: int) -> Skeleton:
    if j == 0:
        return Skeleton({"R": _lab(2, False)})
    if j == 1:
        return Skeleton({"p": _lab(0), "q": _lab(2, False)}, [("p", "q")])
    if j == 2:
        return Skeleton(
            {"p": _lab(0), "g": _lab(1, True, False), "r": _lab(2, False, False)},
            [("p", "g"), ("g", "r")],
        )
    if j == 3:
        return Skeleton(
            {"p": _lab(0), "C1": _lab(1), "C2": _lab(1), "r": _lab(2, False, False)},
            [("p", "C1"), ("p", "C2"), ("C1", "r"), ("C2", "r")],
        )
    raise ValueError(f"no stratification R2_{j}")


def unit_interval() -> Skeleton:
    return Skeleton({"e0": _lab(0), "e1": _lab(0), "i": _lab(1)}, [("e0", "i"), ("e1", "i")])


def unit_square() -> Skeleton:
    return product(unit_interval(), unit_interval())


def open_book() -> Skeleton:
    return Skeleton(
        {"a": _lab(0), "b": _lab(0), "m": _lab(1), "n": _lab(1), "r": _lab(2)},
        [("a", "m"), ("m", "r"), ("b", "n"), ("n", "r")],
    )


# "meets" relations: (source stratum, target stratum, fills the target)
_GAMMA_INTO_GAMMA = {
    (0, 1): [("p", "p", True), ("g", "C1", True), ("g", "C2", True)],
    (1, 0): [("p", "p", True), ("C1", "g", False), ("C2", "g", False)],
    (0, 0): [("p", "p", True), ("g", "g", True)],
    (1, 1): [("p", "p", True), ("C1", "C1", True), ("C2", "C2", True)],
}

_GAMMA_INTO_PLANE = {
    (0, 1): [("p", "p", True), ("g", "q", False)],
    (1, 2): [("p", "p", True), ("C1", "g", False), ("C2", "g", False)],
    (0, 2): [("p", "p", True), ("g", "g", True)],
    (1, 3): [("p", "p", True), ("C1", "C1", True), ("C2", "C2", True)],
    (0, 3): [("p", "p", True), ("g", "C1", True), ("g", "C2", True)],
}


class TableRow(NamedTuple):
    name: str
    source: Skeleton
    target: Skeleton
    relation: list
    expected: MorphClass


def eight_curve_table() -> list[TableRow]:
    """The six example maps with their expected classes.

    Identity ``gamma_k = gamma_l`` is read as the map from ``gamma_k`` to
    ``gamma_l``; every map carries all point-level declarations, since the
    curve sits in the plane as a proper 1-1 immersion.
    """
    rows = [
        TableRow("gamma_0 = gamma_1", gamma(0), gamma(1), _GAMMA_INTO_GAMMA[0, 1], MorphClass.NOT_MORPHISM),
        TableRow("gamma_1 = gamma_0", gamma(1), gamma(0), _GAMMA_INTO_GAMMA[1, 0], MorphClass.EMBEDDING),
        TableRow("gamma_0 = gamma_0", gamma(0), gamma(0), _GAMMA_INTO_GAMMA[0, 0], MorphClass.ISOMORPHISM),
        TableRow("gamma_1 = gamma_1", gamma(1), gamma(1), _GAMMA_INTO_GAMMA[1, 1], MorphClass.ISOMORPHISM),
        TableRow("gamma_0 in R2_1", gamma(0), plane(1), _GAMMA_INTO_PLANE[0, 1], MorphClass.EMBEDDING),
        TableRow("gamma_1 in R2_2", gamma(1), plane(2), _GAMMA_INTO_PLANE[1, 2], MorphClass.EMBEDDING),
        TableRow("gamma_0 in R2_2", gamma(0), plane(2), _GAMMA_INTO_PLANE[0, 2], MorphClass.STRONG_EMBEDDING),
        TableRow("gamma_1 in R2_3", gamma(1), plane(3), _GAMMA_INTO_PLANE[1, 3], MorphClass.STRONG_EMBEDDING),
        TableRow("gamma_0 to R2_3", gamma(0), plane(3), _GAMMA_INTO_PLANE[0, 3], MorphClass.NOT_MORPHISM),
    ]
    return rows


ALL_DECLARED = Declarations(True, True, True)
