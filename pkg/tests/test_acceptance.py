"""Exit criteria, one test per criterion.

Each test carries ``@pytest.mark.acceptance(n, title)``; the conftest prints a
``criterion n: PASS|FAIL`` line for each at the end of the run.
"""

from __future__ import annotations

import time
from pathlib import Path

import pytest

from stratamalg import catalog
from stratamalg.amalgamation import (
    GeneratorConfig,
    fraisse_check,
    graph_join_check,
    pushout,
    verify_pushout_universal,
)
from stratamalg.decomposition import decompose, replay
from stratamalg.dsl import parse_file
from stratamalg.generators import (
    enumerate_strong_cospans,
    random_morphism,
    random_skeleton,
    random_strong_cospan,
    sub_rng,
)
from stratamalg.graphs import hasse_graph, longest_path
from stratamalg.limits import GRAPH_STABLE, LENGTH_UNBOUNDED, classify_limit, cone_tower, sphere_tower
from stratamalg.morphisms import (
    MorphClass,
    StrataMorphism,
    classify,
    classify_candidate,
    is_isomorphic,
)
from stratamalg.pseudomanifold import (
    NonClosedGluing,
    PseudoMorphism,
    amalgamate_pseudo,
    cone_pseudo,
    disjoint_union_pseudo,
    manifold,
    marked_sphere,
    product_manifold,
    pseudo_isomorphic,
    random_closed_pseudo_cospan,
    validate_pseudo,
)
from stratamalg.skeleton import Skeleton, StratumLabel, cone, length, product

import oracles

FIX = Path(__file__).parent.parent / "fixtures"


def _oracle_graph(s):
    leq = set(s.leq_pairs())
    return set(s.ids), {(hi, lo) for lo, hi in oracles.covers(s.ids, leq)}


@pytest.mark.acceptance(1, "figure-eight classification table")
def test_eight_curve_table():
    mismatches = []
    for row in catalog.eight_curve_table():
        got = classify_candidate(row.source, row.target, row.relation, catalog.ALL_DECLARED).cls
        if got != row.expected:
            mismatches.append(f"{row.name}: expected {row.expected.name}, got {got.name}")
    assert not mismatches, "; ".join(mismatches)


@pytest.mark.acceptance(2, "associated graphs of the figure fixtures")
def test_figure_graphs():
    def counts(s):
        g = hasse_graph(s)
        return len(g.vertices), len(g.edges)

    assert counts(catalog.plane(0)) == (1, 0)
    assert counts(catalog.plane(1)) == counts(catalog.gamma(0)) == (2, 1)
    g2 = hasse_graph(catalog.plane(2))
    assert len(g2.vertices) == 3 and set(g2.edges) == {("g", "p"), ("r", "g")}
    g1 = hasse_graph(catalog.gamma(1))
    assert set(g1.edges) == {("C1", "p"), ("C2", "p")}
    assert counts(catalog.unit_interval()) == (3, 2)
    sq = catalog.unit_square()
    g = hasse_graph(sq)
    verts, edges = _oracle_graph(sq)
    assert len(g.vertices) == 9
    assert set(g.vertices) == verts and set(g.edges) == edges


@pytest.mark.acceptance(3, "proper 1-1 immersions: EMBEDDING iff injective")
def test_embedding_iff_injective():
    bad = []
    for i in range(500):
        f = random_morphism(sub_rng(3, i))
        is_emb = classify(f).cls >= MorphClass.EMBEDDING
        injective = len({f(s) for s in f.source.ids}) == len(f.source)
        if is_emb != injective:
            bad.append(i)
    assert not bad


@pytest.mark.acceptance(4, "Fraisse axioms and exhaustive universal property")
def test_fraisse_and_universal():
    rep = fraisse_check(GeneratorConfig(), seed=42, iterations=1000)
    assert [a.iterations for a in rep.axioms] == [1000, 1000, 1000]
    assert rep.ok, rep.first_failure()
    start = time.perf_counter()
    n = 0
    failures = []
    for f, h in enumerate_strong_cospans(4):
        r = verify_pushout_universal(pushout(f, h))
        n += 1
        if not r.passed:
            failures.append(r)
    elapsed = time.perf_counter() - start
    assert n == 18791
    assert not failures, failures[0]
    assert elapsed < 30, f"exhaustive check took {elapsed:.1f} s"


def _down_closed(m):
    leq = oracles.closure(m.target.ids, m.target.relation)
    img = {m(x) for x in m.source.ids}
    return all(b in img for b, t in leq if t in img)


@pytest.mark.acceptance(5, "graph join on closed strong cospans")
def test_graph_join():
    for i in range(300):
        f, h = random_strong_cospan(sub_rng(5, i), closed=True)
        j = graph_join_check(f, h, pushout(f, h))
        assert j.status == "true", (i, j.discrepancy)
    not_closed = 0
    for i in range(300):
        f, h = random_strong_cospan(sub_rng(55, i))
        j = graph_join_check(f, h, pushout(f, h))
        assert j.status != "false"
        closed = all(_down_closed(m) for m in (f, h))
        if not closed:
            not_closed += 1
            assert j.status == "NOT_APPLICABLE"
    assert not_closed > 0


@pytest.mark.acceptance(6, "decomposition replays to an isomorphic skeleton")
def test_decomposition():
    for i in range(300):
        x = random_skeleton(sub_rng(6, i), 1, 12)
        plan = decompose(x)
        assert is_isomorphic(replay(plan), x)
        assert len(plan.pieces) == len(oracles.minimal(x.ids, set(x.leq_pairs())))


@pytest.mark.acceptance(7, "pseudomanifold amalgams validate; base-case link is L disjoint L'")
def test_pseudo_amalgamation():
    for i in range(200):
        f, h = random_closed_pseudo_cospan(sub_rng(7, i))
        out = amalgamate_pseudo(f, h)
        rep = validate_pseudo(out)
        assert rep.ok, (i, rep.violations)
    l1 = marked_sphere(1, point="m", rest="a")
    l2 = marked_sphere(2, point="n", rest="b")
    w = product_manifold(1, cone_pseudo(l1))
    y = product_manifold(1, cone_pseudo(l2))
    x = manifold("v", 1)
    f = PseudoMorphism(x, w, StrataMorphism(x.base, w.base, {"v": ("v", True)}))
    h = PseudoMorphism(x, y, StrataMorphism(x.base, y.base, {"v": ("v", True)}))
    out = amalgamate_pseudo(f, h)
    direct = product_manifold(1, cone_pseudo(disjoint_union_pseudo(l1, l2)))
    assert validate_pseudo(out).ok
    assert pseudo_isomorphic(out.link("v"), disjoint_union_pseudo(l1, l2))
    assert pseudo_isomorphic(out, direct)


@pytest.mark.acceptance(8, "gluing along a non-closed edge is refused; the closed edge works")
def test_non_closed_gluing_fixtures():
    doc = parse_file(FIX / "remark_counterexample.strat")
    with pytest.raises(NonClosedGluing):
        amalgamate_pseudo(doc.pseudo_morphism("f"), doc.pseudo_morphism("h"))
    doc = parse_file(FIX / "remark_closed.strat")
    out = amalgamate_pseudo(doc.pseudo_morphism("f"), doc.pseudo_morphism("h"))
    assert validate_pseudo(out).ok, validate_pseudo(out).violations


@pytest.mark.acceptance(9, "sphere tower stabilizes; cone tower has unbounded length")
def test_towers():
    c = classify_limit(sphere_tower(5))
    assert c.verdict == GRAPH_STABLE
    assert c.stabilization_index == 1
    assert c.stable_graph == (3, 2)
    t = cone_tower(Skeleton({"M": StratumLabel(0, True)}), 5)
    c = classify_limit(t, extrapolate=True)
    assert c.verdict == LENGTH_UNBOUNDED
    assert c.lengths == (0, 1, 2, 3, 4, 5)


@pytest.mark.acceptance(10, "length identities against the chain oracle")
def test_length_identities():
    def oracle_length(s):
        return oracles.length(s.ids, set(s.leq_pairs()))

    for i in range(500):
        s = random_skeleton(sub_rng(10, i), 0, 10)
        assert length(s) == longest_path(hasse_graph(s)) == oracle_length(s)
    for i in range(500):
        l = random_skeleton(sub_rng(11, i), 0, 8, compact=True)
        assert length(cone(l)) == oracle_length(l) + 1 == oracle_length(cone(l))
    for i in range(500):
        rng = sub_rng(12, i)
        a = random_skeleton(rng, 1, 4, prefix="a")
        b = random_skeleton(rng, 1, 4, prefix="b")
        p = product(a, b)
        assert length(p) == oracle_length(a) + oracle_length(b) == oracle_length(p)
