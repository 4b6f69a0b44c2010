from __future__ import annotations

import json

import pytest

from stratamalg import catalog
from stratamalg.limits import (
    FINITE_DIM,
    GRAPH_STABLE,
    LENGTH_UNBOUNDED,
    MIXED,
    Tower,
    TowerError,
    bouquet_tower,
    classify_limit,
    colimit,
    cone_tower,
    is_graph_isomorphism,
    sphere_stage,
    sphere_tower,
)
from stratamalg.morphisms import MorphClass, StrataMorphism, classify, identity
from stratamalg.skeleton import INF, Skeleton, StratumLabel, dumps, length


def test_sphere_tower():
    t = sphere_tower(5)
    assert len(t.stages) == 5
    assert all(classify(m).cls == MorphClass.EMBEDDING for m in t.maps)
    c = classify_limit(t)
    assert c.verdict == GRAPH_STABLE
    assert c.stabilization_index == 1
    assert c.stable_graph == (3, 2)
    assert colimit(t).labels["reg"].dim == 5
    assert colimit(t, extrapolate=True).labels["reg"].dim == INF
    assert colimit(t, extrapolate=True).labels["zero"].dim == 0


def test_sphere_stage_connectedness():
    assert not sphere_stage(1).labels["reg"].connected
    assert sphere_stage(2).labels["reg"].connected


def test_cone_tower_lengths():
    t = cone_tower(Skeleton({"M": StratumLabel(1, True)}), 5)
    assert [length(s) for s in t.stages] == [0, 1, 2, 3, 4, 5]
    c = classify_limit(t, extrapolate=True)
    assert c.verdict == LENGTH_UNBOUNDED
    assert c.lengths == (0, 1, 2, 3, 4, 5)
    assert classify_limit(t).verdict == MIXED


def test_bouquet_tower_is_graph_stable():
    t = bouquet_tower(catalog.gamma(1), "p", 3, 4)
    c = classify_limit(t)
    assert c.verdict == GRAPH_STABLE
    assert c.stabilization_index == 0
    assert c.stable_graph == (7, 6)


def test_finite_dim():
    a = Skeleton({"a": StratumLabel(2, True)})
    b = Skeleton({"a": StratumLabel(2, True), "b": StratumLabel(2, True)})
    t = Tower((a, b), (StrataMorphism(a, b, {"a": ("a", True)}),))
    assert classify_limit(t).verdict == FINITE_DIM


def test_identity_tower_stabilizes_immediately():
    s = catalog.plane(3)
    t = Tower((s, s, s), (identity(s), identity(s)), start_index=4)
    assert classify_limit(t).stabilization_index == 4
    assert is_graph_isomorphism(identity(s))


def test_tower_errors():
    s = catalog.gamma(0)
    with pytest.raises(TowerError):
        Tower((), ())
    with pytest.raises(TowerError):
        Tower((s, s), ())
    with pytest.raises(TowerError):
        classify_limit(Tower((s,), ()))
    g1 = catalog.gamma(1)
    squash = StrataMorphism(g1, s, {"p": ("p", True), "C1": ("g", False), "C2": ("g", False)})
    with pytest.raises(TowerError):
        Tower((g1, s), (squash,))
    with pytest.raises(TowerError):
        sphere_tower(0)


def test_tower_json_round_trip():
    t = sphere_tower(3)
    back = Tower.from_json(json.loads(dumps(t.to_json())))
    assert back.stages == t.stages
    assert back.start_index == 1
    assert classify_limit(back) == classify_limit(t)
    assert classify_limit(t).to_json()["verdict"] == GRAPH_STABLE
