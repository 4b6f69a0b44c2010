from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from stratamalg import catalog
from stratamalg.graphs import (
    GraphError,
    StratGraph,
    graph_of_closure,
    graph_of_neighborhood,
    hasse_graph,
    irreducible_components,
    is_basic,
    is_closed_subset,
    is_descending_subgraph,
    is_irreducible,
    is_subgraph,
    is_tree,
    longest_path,
    to_dot,
    to_json,
)
from stratamalg.skeleton import Skeleton, length

import oracles
from strategies import skeletons

GOLDEN = Path(__file__).parent / "golden"


@given(skeletons())
def test_edges_are_reversed_covers(s):
    g = hasse_graph(s)
    want = {(hi, lo) for lo, hi in oracles.covers(s.ids, set(s.leq_pairs()))}
    assert set(g.edges) == want
    assert set(g.vertices) == set(s.ids)


@given(skeletons())
def test_longest_path_is_length(s):
    assert longest_path(hasse_graph(s)) == length(s)


def test_longest_path_rejects_cycle():
    with pytest.raises(GraphError):
        longest_path(StratGraph(("a", "b"), (("a", "b"), ("b", "a"))))


@given(skeletons())
def test_components_against_union_find(s):
    comps = oracles.weak_components(s.ids, hasse_graph(s).edges)
    got = irreducible_components(s)
    assert sorted(sorted(c.ids) for c in got) == sorted(sorted(c) for c in comps)
    assert is_irreducible(s) == (len(comps) == 1)
    assert is_basic(s) == is_irreducible(s)


def test_empty_is_not_irreducible():
    assert not is_irreducible(Skeleton())
    assert irreducible_components(Skeleton()) == []


@given(skeletons(), st.data())
def test_descending_subgraph_matches_closedness(s, data):
    z = data.draw(st.sets(st.sampled_from(s.ids)) if s.ids else st.just(set()))
    closed = all(y in z for x in z for y in s.ids if s.leq(y, x))
    assert is_closed_subset(s, z) == closed
    assert is_descending_subgraph(s, z) == closed


@given(skeletons())
def test_closure_and_neighborhood_graphs(s):
    g = hasse_graph(s)
    for x in s.ids:
        c = graph_of_closure(s, x)
        n = graph_of_neighborhood(s, x)
        assert is_subgraph(c, g) and is_subgraph(n, g)
        assert set(c.vertices) == {y for y in s.ids if s.leq(y, x)}


def test_figure_graphs():
    g = hasse_graph(catalog.gamma(1))
    assert set(g.edges) == {("C1", "p"), ("C2", "p")}
    assert is_tree(g)
    g3 = hasse_graph(catalog.plane(3))
    assert set(g3.edges) == {("C1", "p"), ("C2", "p"), ("r", "C1"), ("r", "C2")}
    assert not is_tree(g3)
    sq = hasse_graph(catalog.unit_square())
    assert len(sq.vertices) == 9 and len(sq.edges) == 12


def test_dot_golden():
    g = hasse_graph(catalog.gamma(1))
    assert to_dot(g, "eight") == (GOLDEN / "eight_curve.dot").read_text()


def test_dot_quotes_and_json():
    g = StratGraph(("a",), ())
    assert to_dot(g, 'x"y') == 'digraph "x\\"y" {\n  "a";\n}\n'
    assert to_json(hasse_graph(catalog.gamma(0))) == {"vertices": ["g", "p"], "edges": [["g", "p"]]}
