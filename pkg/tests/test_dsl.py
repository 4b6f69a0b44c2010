from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import given

from stratamalg import catalog
from stratamalg.dsl import (
    DSLSyntaxError,
    DuplicateName,
    LinkCycle,
    Pos,
    UnresolvedReference,
    format_document,
    format_skeleton,
    parse,
    parse_file,
    pseudo_document,
    validate_space,
)
from stratamalg.morphisms import MorphClass, classify
from stratamalg.pseudomanifold import cone_pseudo, marked_sphere, pseudo_isomorphic
from stratamalg.skeleton import INF

from strategies import skeletons

FIX = Path(__file__).parent.parent / "fixtures"


@pytest.mark.parametrize("path", sorted(FIX.glob("*.strat")), ids=lambda p: p.stem)
def test_fixture_round_trip(path):
    doc = parse_file(path)
    text = format_document(doc)
    again = parse(text)
    assert again == doc
    assert format_document(again) == text


@given(skeletons())
def test_skeleton_round_trip(s):
    doc = parse(format_skeleton("x", s))
    assert doc.skeleton("x") == s


def test_pseudo_round_trip():
    x = cone_pseudo(marked_sphere(2))
    doc = parse(format_document(pseudo_document("x", x)))
    assert pseudo_isomorphic(doc.pseudo("x"), x)


def test_gamma1_fixture_matches_catalog():
    doc = parse_file(FIX / "eight_curve.strat")
    assert doc.skeleton("eight") == catalog.gamma(1)


def test_figure_spaces_match_catalog():
    doc = parse_file(FIX / "figure1.strat")
    assert doc.skeleton("gamma0") == catalog.gamma(0)
    assert doc.skeleton("gamma1") == catalog.gamma(1)
    for j in range(4):
        assert doc.skeleton(f"R2_{j}") == catalog.plane(j)
    assert doc.skeleton("interval") == catalog.unit_interval()
    assert classify(doc.morphism("gamma1_in_R2_3")).cls == MorphClass.STRONG_EMBEDDING


def test_square_matches_product():
    doc = parse_file(FIX / "remark_counterexample.strat")
    assert doc.skeleton("square") == catalog.unit_square()


def test_flags_default_false_and_inf():
    doc = parse("space s {\n  stratum a dim inf\n  stratum b dim 2 compact\n}\n")
    s = doc.skeleton("s")
    assert s.labels["a"].dim == INF
    assert not s.labels["a"].compact and not s.labels["a"].connected
    assert s.labels["b"].compact and not s.labels["b"].connected


def test_chained_order():
    s = parse("space s { stratum a dim 0 stratum b dim 1 stratum c dim 2 order a < b < c }").skeleton("s")
    assert s.leq("a", "c")


def test_syntax_error_position():
    with pytest.raises(DSLSyntaxError) as e:
        parse("space s {\n  stratum a dim x\n}\n")
    assert e.value.pos == Pos(2, 17)
    assert e.value.token == "x"
    assert str(e.value).startswith("2:17: ")


def test_keyword_is_not_a_name():
    with pytest.raises(DSLSyntaxError):
        parse("space order { }")


def test_unresolved_and_duplicate():
    with pytest.raises(UnresolvedReference) as e:
        parse("space s {\n  stratum a dim 0\n  order a < b\n}\n")
    assert e.value.pos == Pos(3, 3) and e.value.token == "b"
    with pytest.raises(DuplicateName):
        parse("space s { stratum a dim 0 stratum a dim 1 }")
    with pytest.raises(DuplicateName):
        parse("space s { }\nspace s { }")
    with pytest.raises(UnresolvedReference):
        parse("space s { stratum a dim 0 }\nmorphism m : s -> t { a -> a }")


def test_link_cycle():
    text = (
        "space a {\n  stratum p dim 0\n  link p = b\n}\n"
        "space b {\n  stratum q dim 0\n  link q = a\n}\n"
    )
    with pytest.raises(LinkCycle) as e:
        parse(text)
    assert "a -> b -> a" in str(e.value)
    assert e.value.pos is not None


def test_strict_self_order_is_reported():
    doc = parse("space s {\n  stratum a dim 0\n  order a < a\n}\n")
    diags = validate_space(doc, "s")
    assert [d.message for d in diags] == ["antisymmetry(a,a) in space s: a < a"]
    assert diags[0].pos == Pos(3, 3)


def test_antisymmetry_with_position():
    doc = parse("space s {\n  stratum a dim 0\n  stratum b dim 0\n  order a < b\n  order b < a\n}\n")
    diags = validate_space(doc, "s")
    assert len(diags) == 1 and diags[0].message.startswith("antisymmetry(a,b)")
    assert diags[0].pos.line in (4, 5)


def test_tower_block():
    doc = parse_file(FIX / "sphere_tower.strat")
    t = doc.tower("spheres")
    assert len(t.stages) == 3
    assert all(t.regular_image)
