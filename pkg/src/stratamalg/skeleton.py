"""Skeletons: finite labeled incidence posets of strata.

A skeleton records, for each stratum, a dimension and compactness /
connectedness flags, together with the adherence order ``S' <= S`` ("S'
lies in the closure of S").  Orders may be given as arbitrary relations; the
reflexive-transitive closure is taken on construction and antisymmetry is
reported by :func:`validate_skeleton`.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional

from . import kernels

INF = math.inf

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class SkeletonError(ValueError):
    """Malformed skeleton input (bad identifier, unknown stratum, bad label)."""


def is_identifier(token: str) -> bool:
    return bool(_IDENT.match(token))


@dataclass(frozen=True)
class StratumLabel:
    dim: float  # int, or INF for strata produced by limits.colimit
    compact: bool = False  # the closure of the stratum is compact
    connected: bool = True
    display_name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        d = self.dim
        if d != INF and (isinstance(d, bool) or int(d) != d or d < 0):
            raise SkeletonError(f"dimension must be a non-negative integer or INF, got {d!r}")
        if d != INF:
            object.__setattr__(self, "dim", int(d))

    def key(self) -> tuple:
        return (self.dim, self.compact, self.connected)

    def replace(self, **changes) -> "StratumLabel":
        data = {
            "dim": self.dim,
            "compact": self.compact,
            "connected": self.connected,
            "display_name": self.display_name,
        }
        data.update(changes)
        return StratumLabel(**data)


class StrataSubset(frozenset):
    """A set of stratum ids remembering the skeleton it was taken from."""

    owner: "Skeleton"

    def __new__(cls, owner: "Skeleton", members: Iterable[str] = ()):
        obj = super().__new__(cls, members)
        obj.owner = owner
        return obj

    def __repr__(self):
        return f"StrataSubset({sorted(self)!r})"


class Skeleton:
    """Finite labeled poset of strata.

    ``strata`` maps stratum ids to labels; ``order`` is any iterable of pairs
    ``(a, b)`` read as ``a <= b``.
    """

    def __init__(
        self,
        strata: Mapping[str, StratumLabel] | Iterable[tuple[str, StratumLabel]] = (),
        order: Iterable[tuple[str, str]] = (),
    ):
        items = dict(strata)
        for sid, lab in items.items():
            if not isinstance(sid, str) or not is_identifier(sid):
                raise SkeletonError(f"invalid stratum id {sid!r}")
            if not isinstance(lab, StratumLabel):
                raise SkeletonError(f"stratum {sid!r} needs a StratumLabel, got {lab!r}")
        self.ids: tuple[str, ...] = tuple(sorted(items))
        self.labels: dict[str, StratumLabel] = {k: items[k] for k in self.ids}
        self._index = {sid: k for k, sid in enumerate(self.ids)}
        n = len(self.ids)
        rel = bytearray(n * n)
        pairs = []
        for a, b in order:
            if a not in self._index or b not in self._index:
                missing = a if a not in self._index else b
                raise SkeletonError(f"order mentions unknown stratum {missing!r}")
            rel[self._index[a] * n + self._index[b]] = 1
            pairs.append((a, b))
        self.relation = frozenset(pairs)
        self._leq = bytes(kernels.closure(n, bytes(rel)))

    # -- basic protocol ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.ids)

    def __iter__(self) -> Iterator[str]:
        return iter(self.ids)

    def __contains__(self, sid) -> bool:
        return sid in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, Skeleton):
            return NotImplemented
        return (
            self.ids == other.ids
            and all(self.labels[k].key() == other.labels[k].key() for k in self.ids)
            and self._leq == other._leq
        )

    def __hash__(self) -> int:
        return hash((self.ids, self._leq))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}:{_fmt_dim(self.labels[k].dim)}" for k in self.ids)
        edges = ", ".join(f"{a}<{b}" for a, b in self.cover_pairs())
        return f"Skeleton({{{body}}}; {edges})"

    # -- order queries -----------------------------------------------------

    def index(self, sid: str) -> int:
        try:
            return self._index[sid]
        except KeyError:
            raise SkeletonError(f"unknown stratum {sid!r}") from None

    def label(self, sid: str) -> StratumLabel:
        self.index(sid)
        return self.labels[sid]

    def dim(self, sid: str) -> float:
        return self.label(sid).dim

    def leq(self, a: str, b: str) -> bool:
        n = len(self.ids)
        return bool(self._leq[self.index(a) * n + self.index(b)])

    def lt(self, a: str, b: str) -> bool:
        return a != b and self.leq(a, b) and not self.leq(b, a)

    @property
    def leq_matrix(self) -> bytes:
        return self._leq

    @cached_property
    def _up(self) -> dict[str, frozenset]:
        n = len(self.ids)
        return {
            a: frozenset(self.ids[j] for j in range(n) if self._leq[i * n + j])
            for i, a in enumerate(self.ids)
        }

    @cached_property
    def _down(self) -> dict[str, frozenset]:
        n = len(self.ids)
        return {
            b: frozenset(self.ids[i] for i in range(n) if self._leq[i * n + j])
            for j, b in enumerate(self.ids)
        }

    def up(self, sid: str) -> frozenset:
        self.index(sid)
        return self._up[sid]

    def down(self, sid: str) -> frozenset:
        self.index(sid)
        return self._down[sid]

    def cover_pairs(self) -> list[tuple[str, str]]:
        """Cover relation as sorted ``(lower, upper)`` pairs."""
        return sorted(
            (self.ids[lo], self.ids[hi])
            for lo, hi in kernels.cover_pairs(len(self.ids), self._leq)
        )

    @cached_property
    def _heights(self) -> dict[str, int]:
        hs = kernels.chain_heights(len(self.ids), self._leq)
        return dict(zip(self.ids, hs))

    def leq_pairs(self) -> list[tuple[str, str]]:
        n = len(self.ids)
        return [
            (self.ids[i], self.ids[j])
            for i in range(n)
            for j in range(n)
            if self._leq[i * n + j]
        ]

    def relabel(self, mapping: Mapping[str, str]) -> "Skeleton":
        """Rename strata; ids missing from ``mapping`` are kept."""
        new = {mapping.get(k, k): self.labels[k] for k in self.ids}
        if len(new) != len(self.ids):
            raise SkeletonError("renaming is not injective")
        return Skeleton(new, [(mapping.get(a, a), mapping.get(b, b)) for a, b in self.leq_pairs()])

    def with_labels(self, **changes) -> "Skeleton":
        return Skeleton(
            {k: lab.replace(**changes) for k, lab in self.labels.items()}, self.leq_pairs()
        )


def _fmt_dim(d) -> str:
    return "inf" if d == INF else str(d)


# -- validation ------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_skeleton(s: Skeleton) -> ValidationReport:
    """Check the partial-order axioms after reflexive-transitive closure.

    Reflexivity and transitivity hold by construction, so the report lists
    antisymmetry failures as ``antisymmetry(a,b)``.
    """
    out = [
        f"antisymmetry({s.ids[i]},{s.ids[j]})"
        for i, j in kernels.antisymmetry_violations(len(s), s.leq_matrix)
    ]
    return ValidationReport(tuple(out))


# -- subsets and derived parts ---------------------------------------------


def closure_of(s: Skeleton, x: str) -> StrataSubset:
    """Down-set of ``x``: every stratum adhering to it."""
    return StrataSubset(s, s.down(x))


def incidence_neighborhood(s: Skeleton, x: str) -> StrataSubset:
    """Up-set ``U_x`` of ``x``."""
    return StrataSubset(s, s.up(x))


def length_of(s: Skeleton, x: str) -> int:
    s.index(x)
    return s._heights[x]


def length(s: Skeleton) -> int:
    """Longest strict chain; the empty skeleton has length -1."""
    if not len(s):
        return -1
    return max(s._heights.values())


def maximal_strata(s: Skeleton) -> StrataSubset:
    return StrataSubset(s, (x for x in s.ids if all(not s.lt(x, y) for y in s.up(x))))


def minimal_strata(s: Skeleton) -> StrataSubset:
    return StrataSubset(s, (x for x in s.ids if all(not s.lt(y, x) for y in s.down(x))))


def regular_part(s: Skeleton) -> StrataSubset:
    return maximal_strata(s)


def singular_part(s: Skeleton) -> StrataSubset:
    reg = maximal_strata(s)
    return StrataSubset(s, (x for x in s.ids if x not in reg))


# -- constructors ----------------------------------------------------------


class Tagged(NamedTuple):
    """A combined skeleton with the id maps of its two inputs."""

    skeleton: Skeleton
    left: dict[str, str]
    right: dict[str, str]


def fresh_id(base: str, taken) -> str:
    if base not in taken:
        return base
    k = 1
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def disjoint_union(a: Skeleton, b: Skeleton) -> Tagged:
    """``a ⊔ b`` with no cross relations.

    Ids of ``a`` are kept; ids of ``b`` are kept unless they clash, in which
    case a numeric suffix is added.
    """
    left = {x: x for x in a.ids}
    taken = set(a.ids)
    right = {}
    for y in b.ids:
        new = fresh_id(y, taken | set(b.ids) - {y})
        taken.add(new)
        right[y] = new
    strata = {left[x]: a.labels[x] for x in a.ids}
    strata.update({right[y]: b.labels[y] for y in b.ids})
    order = [(left[p], left[q]) for p, q in a.leq_pairs()]
    order += [(right[p], right[q]) for p, q in b.leq_pairs()]
    return Tagged(Skeleton(strata, order), left, right)


def product(a: Skeleton, b: Skeleton) -> Skeleton:
    """Canonical product stratification ``{S x T}`` with componentwise order."""
    names: dict[tuple[str, str], str] = {}
    taken: set[str] = set()
    for x in a.ids:
        for y in b.ids:
            nm = fresh_id(f"{x}_x_{y}", taken)
            taken.add(nm)
            names[x, y] = nm
    strata = {}
    for (x, y), nm in names.items():
        la, lb = a.labels[x], b.labels[y]
        strata[nm] = StratumLabel(
            la.dim + lb.dim, la.compact and lb.compact, la.connected and lb.connected
        )
    order = [
        (names[x1, y1], names[x2, y2])
        for x1, x2 in a.leq_pairs()
        for y1, y2 in b.leq_pairs()
    ]
    return Skeleton(strata, order)


class ConeError(SkeletonError):
    pass


def cone(l: Skeleton, vertex: str = "v") -> Skeleton:
    """Open cone ``c(L)``: a new vertex below every ``S x R+``.

    Every stratum of ``l`` must be labeled compact.  The vertex is a point,
    so its closure is compact; the strata ``S x R+`` are not.  ``cone(empty)`` is a
    single point.
    """
    for x in l.ids:
        if not l.labels[x].compact:
            raise ConeError(f"cone needs a compact base; stratum {x!r} is not compact")
    v = fresh_id(vertex, set(l.ids))
    strata = {v: StratumLabel(0, compact=True, connected=True)}
    for x in l.ids:
        lab = l.labels[x]
        strata[x] = StratumLabel(lab.dim + 1, False, lab.connected, lab.display_name)
    order = [(v, x) for x in l.ids] + list(l.leq_pairs())
    return Skeleton(strata, order)


def cone_vertex(l: Skeleton, vertex: str = "v") -> str:
    """Id that :func:`cone` gives the vertex over ``l``."""
    return fresh_id(vertex, set(l.ids))


def restrict(s: Skeleton, z: Iterable[str]) -> Skeleton:
    """Sub-poset on ``z`` with the restricted order and unchanged labels."""
    members = set(z)
    for x in members:
        s.index(x)
    return Skeleton(
        {x: s.labels[x] for x in members},
        [(a, b) for a, b in s.leq_pairs() if a in members and b in members],
    )


def is_down_closed(s: Skeleton, z: Iterable[str]) -> bool:
    members = set(z)
    return all(s.down(x) <= members for x in members)


def is_up_closed(s: Skeleton, z: Iterable[str]) -> bool:
    members = set(z)
    return all(s.up(x) <= members for x in members)


# -- canonical JSON ----------------------------------------------------------


def _dim_json(d):
    return "inf" if d == INF else d


def to_json(s: Skeleton) -> dict:
    return {
        "strata": [
            {
                "id": k,
                "dim": _dim_json(s.labels[k].dim),
                "compact": s.labels[k].compact,
                "connected": s.labels[k].connected,
            }
            for k in s.ids
        ],
        "order": [[a, b] for a, b in s.cover_pairs()],
    }


def from_json(data: Mapping) -> Skeleton:
    strata = {}
    for row in data.get("strata", []):
        d = row["dim"]
        strata[row["id"]] = StratumLabel(
            INF if d == "inf" else d,
            bool(row.get("compact", False)),
            bool(row.get("connected", True)),
        )
    return Skeleton(strata, [tuple(p) for p in data.get("order", [])])


def dumps(obj) -> str:
    """Byte-stable JSON text (fixed key order, two-space indent, newline)."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def point(sid: str = "pt", dim: int = 0, compact: bool = True) -> Skeleton:
    return Skeleton({sid: StratumLabel(dim, compact)})
