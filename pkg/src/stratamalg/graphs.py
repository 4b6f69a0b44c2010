"""Associated graphs of skeletons.

The graph of a skeleton has one vertex per stratum and an edge ``S2 -> S1``
for every cover ``S1 < S2`` (edges point towards the adherent, smaller
stratum).  Connectivity and path lengths are computed with networkx so they
stay independent of the order kernels used by :mod:`stratamalg.skeleton`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from .skeleton import (
    Skeleton,
    closure_of,
    incidence_neighborhood,
    is_down_closed,
    restrict,
)


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class StratGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]  # (upper, lower)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges))))

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def induced(self, vs: Iterable[str]) -> "StratGraph":
        keep = set(vs)
        return StratGraph(
            tuple(v for v in self.vertices if v in keep),
            tuple(e for e in self.edges if e[0] in keep and e[1] in keep),
        )


def hasse_graph(s: Skeleton) -> StratGraph:
    return StratGraph(s.ids, tuple((hi, lo) for lo, hi in s.cover_pairs()))


def _weak_components(g: StratGraph) -> list[set[str]]:
    return [set(c) for c in nx.weakly_connected_components(g.to_networkx())]


def is_irreducible(s: Skeleton) -> bool:
    """Connected associated graph.  The empty skeleton is not irreducible."""
    if not len(s):
        return False
    return len(_weak_components(hasse_graph(s))) == 1


def irreducible_components(s: Skeleton) -> list[Skeleton]:
    comps = sorted(_weak_components(hasse_graph(s)), key=min)
    return [restrict(s, c) for c in comps]


def is_basic(s: Skeleton) -> bool:
    # finite length is automatic for finite skeletons
    return is_irreducible(s)


def longest_path(g: StratGraph) -> int:
    """Maximum number of edges on a directed path; -1 for the empty graph."""
    if not g.vertices:
        return -1
    dg = g.to_networkx()
    if not nx.is_directed_acyclic_graph(dg):
        raise GraphError("longest_path needs an acyclic graph")
    return nx.dag_longest_path_length(dg)


def is_closed_subset(s: Skeleton, z: Iterable[str]) -> bool:
    """Down-closedness of ``z``."""
    return is_down_closed(s, z)


def is_descending_subgraph(s: Skeleton, z: Iterable[str]) -> bool:
    """Graph-side closedness test for ``z``.

    True iff every edge of the graph of ``restrict(s, z)`` is an edge of the
    graph of ``s`` and every edge of the graph of ``s`` leaving a vertex of
    ``z`` stays inside it.  Agrees with :func:`is_closed_subset`.
    """
    members = set(z)
    big = set(hasse_graph(s).edges)
    small = set(hasse_graph(restrict(s, members)).edges)
    if not small <= big:
        return False
    return all(lo in members for hi, lo in big if hi in members)


def graph_of_closure(s: Skeleton, x: str) -> StratGraph:
    return hasse_graph(s).induced(closure_of(s, x))


def graph_of_neighborhood(s: Skeleton, x: str) -> StratGraph:
    return hasse_graph(s).induced(incidence_neighborhood(s, x))


def is_tree(g: StratGraph) -> bool:
    """Underlying undirected graph is a tree."""
    if not g.vertices:
        return False
    return nx.is_tree(g.to_networkx().to_undirected(as_view=True))


def is_subgraph(small: StratGraph, big: StratGraph) -> bool:
    return set(small.vertices) <= set(big.vertices) and set(small.edges) <= set(big.edges)


def _q(v: str) -> str:
    return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: StratGraph, name: str = "G") -> str:
    lines = [f"digraph {_q(name)} {{"]
    lines += [f"  {_q(v)};" for v in g.vertices]
    lines += [f"  {_q(a)} -> {_q(b)};" for a, b in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: StratGraph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}
