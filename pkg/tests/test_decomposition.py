from __future__ import annotations

import json
import random

import pytest
from hypothesis import given

from stratamalg import catalog
from stratamalg.decomposition import (
    DISJOINT,
    PUSHOUT,
    AmalgamationPlan,
    PlanError,
    decompose,
    pieces_are_basic,
    replay,
)
from stratamalg.generators import random_skeleton
from stratamalg.morphisms import is_isomorphic
from stratamalg.skeleton import Skeleton, dumps, minimal_strata

import oracles
from strategies import skeletons


@given(skeletons())
def test_pieces_are_neighborhoods_of_minimal_strata(s):
    plan = decompose(s)
    leq = set(s.leq_pairs())
    assert set(plan.minimal) == oracles.minimal(s.ids, leq)
    for m, piece in zip(plan.minimal, plan.pieces):
        assert set(piece.ids) == oracles.up(s.ids, leq, m)
    assert pieces_are_basic(plan)
    assert len(plan.steps) == max(len(plan.pieces) - 1, 0)


@given(skeletons())
def test_replay_reproduces(s):
    trace: list = []
    out = replay(decompose(s), trace)
    assert out == s
    if len(s):
        assert trace[-1] == s
        assert len(trace) == len(minimal_strata(s))


def test_random_large():
    rng = random.Random(31)
    for _ in range(100):
        s = random_skeleton(rng, 1, 12)
        plan = decompose(s)
        assert is_isomorphic(replay(plan), s)
        back = AmalgamationPlan.from_json(json.loads(dumps(plan.to_json())))
        assert replay(back) == s


def test_empty():
    plan = decompose(Skeleton())
    assert plan.pieces == () and plan.steps == ()
    assert replay(plan) == Skeleton()


def test_step_kinds():
    plan = decompose(catalog.open_book())
    assert [st.kind for st in plan.steps] == [PUSHOUT]
    assert set(plan.steps[0].glue.ids) == {"r"}
    two = decompose(Skeleton({"a": catalog.gamma(0).labels["p"], "b": catalog.gamma(0).labels["p"]}))
    assert [st.kind for st in two.steps] == [DISJOINT]


def test_square_has_four_corners():
    plan = decompose(catalog.unit_square())
    assert len(plan.pieces) == 4
    assert all(len(p) == 4 for p in plan.pieces)
    assert replay(plan) == catalog.unit_square()


@pytest.mark.parametrize(
    "data",
    [
        {},
        {"pieces": [], "steps": [{"kind": "glue", "piece": 0, "accumulated": {}}]},
        {"pieces": [{"strata": []}], "steps": [{"kind": "pushout", "piece": 3, "accumulated": {}}]},
    ],
)
def test_malformed_plans(data):
    with pytest.raises(PlanError):
        AmalgamationPlan.from_json(data)
