from __future__ import annotations

import random

import pytest
from hypothesis import given

from stratamalg import catalog
from stratamalg.generators import random_morphism
from stratamalg.morphisms import (
    NO_DECLARATIONS,
    Declarations,
    MorphClass,
    MorphismError,
    NotStratumPreserving,
    StrataMorphism,
    candidate_morphism,
    classify,
    classify_candidate,
    compose,
    find_isomorphism,
    from_json,
    identity,
    is_closed_embedding,
    is_isomorphic,
    iter_isomorphisms,
    to_json,
)
from stratamalg.skeleton import Skeleton, StratumLabel

import oracles
from strategies import skeletons


def _lab(d):
    return StratumLabel(d, True, True)


def _oracle_class(f):
    """Classification straight from the definitions."""
    src, tgt = f.source, f.target
    for s in src.ids:
        t, onto = f.entries[s]
        ds, dt = src.labels[s].dim, tgt.labels[t].dim
        if (onto and ds != dt) or ds > dt:
            return MorphClass.NOT_MORPHISM
    for a, b in src.leq_pairs():
        if not tgt.leq(f(a), f(b)):
            return MorphClass.NOT_MORPHISM
    d = f.declarations
    if not d.immersion:
        return MorphClass.MORPHISM
    if not (d.proper and d.injective_on_points) or len(set(map(f, src.ids))) < len(src):
        return MorphClass.IMMERSION
    if not all(o for _, o in f.entries.values()):
        return MorphClass.EMBEDDING
    if any(tgt.leq(f(a), f(b)) and not src.leq(a, b) for a in src.ids for b in src.ids):
        return MorphClass.EMBEDDING
    if set(map(f, src.ids)) != set(tgt.ids):
        return MorphClass.STRONG_EMBEDDING
    return MorphClass.ISOMORPHISM


def test_classify_matches_definitions():
    rng = random.Random(11)
    seen = set()
    for k in range(400):
        decl = Declarations(rng.random() < 0.9, rng.random() < 0.9, rng.random() < 0.9)
        f = random_morphism(rng, decl)
        c = classify(f).cls
        assert c == _oracle_class(f), f
        seen.add(c)
    assert MorphClass.EMBEDDING in seen and MorphClass.IMMERSION in seen


@given(skeletons())
def test_identity_is_isomorphism(s):
    assert classify(identity(s)).cls == MorphClass.ISOMORPHISM


def test_dimension_rules():
    a = Skeleton({"x": _lab(1)})
    b = Skeleton({"y": _lab(0), "z": _lab(2)})
    assert classify(StrataMorphism(a, b, {"x": ("y", False)})).cls == MorphClass.NOT_MORPHISM
    assert classify(StrataMorphism(a, b, {"x": ("z", True)})).cls == MorphClass.NOT_MORPHISM
    assert classify(StrataMorphism(a, b, {"x": ("z", False)})).cls == MorphClass.EMBEDDING


def test_declarations_cap_class():
    s = catalog.gamma(1)
    assert classify(StrataMorphism(s, s, {x: (x, True) for x in s.ids}, NO_DECLARATIONS)).cls == MorphClass.MORPHISM
    d = Declarations(False, True, True)
    assert classify(StrataMorphism(s, s, {x: (x, True) for x in s.ids}, d)).cls == MorphClass.IMMERSION


def test_candidate_needs_one_target():
    g0, g1 = catalog.gamma(0), catalog.gamma(1)
    rel = [("p", "p", True), ("g", "C1", True), ("g", "C2", True)]
    with pytest.raises(NotStratumPreserving) as e:
        candidate_morphism(g0, g1, rel)
    assert e.value.stratum == "g" and e.value.targets == ("C1", "C2")
    assert classify_candidate(g0, g1, rel).cls == MorphClass.NOT_MORPHISM


def test_bad_entries():
    a = Skeleton({"x": _lab(0)})
    with pytest.raises(MorphismError):
        StrataMorphism(a, a, {})
    with pytest.raises(MorphismError):
        StrataMorphism(a, a, {"x": ("q", True)})


def test_compose_and_json():
    rng = random.Random(12)
    for _ in range(100):
        f = random_morphism(rng)
        g = identity(f.target)
        assert compose(g, f) == f
        assert from_json(to_json(f), f.source, f.target) == f
    a, b = catalog.gamma(0), catalog.gamma(1)
    with pytest.raises(MorphismError):
        compose(identity(a), identity(b))


def test_closed_embedding():
    g0, p2 = catalog.gamma(0), catalog.plane(2)
    f = StrataMorphism(g0, p2, {"p": ("p", True), "g": ("g", True)})
    assert is_closed_embedding(f)
    arc = Skeleton({"e": _lab(1)})
    f3 = StrataMorphism(arc, p2, {"e": ("g", True)})
    assert not is_closed_embedding(f3)
    with pytest.raises(MorphismError):
        is_closed_embedding(StrataMorphism(arc, p2, {"e": ("p", False)}))


@given(skeletons(max_size=5), skeletons(max_size=5))
def test_isomorphism_against_permutations(a, b):
    want = oracles.isomorphic(
        a.ids, set(a.leq_pairs()), {x: a.labels[x].key() for x in a.ids},
        b.ids, set(b.leq_pairs()), {x: b.labels[x].key() for x in b.ids},
    )
    assert is_isomorphic(a, b) == want
    f = find_isomorphism(a, b)
    assert (f is not None) == want
    if f is not None:
        assert classify(f).cls == MorphClass.ISOMORPHISM


@given(skeletons(max_size=5))
def test_self_isomorphisms_are_automorphisms(s):
    for m in iter_isomorphisms(s, s):
        assert all(s.leq(m[a], m[b]) == s.leq(a, b) for a in s.ids for b in s.ids)
