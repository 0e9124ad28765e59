from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from aoc.strip_plane import (
    NEGATIVE_STRIP,
    POSITIVE_STRIP,
    TRIVIAL,
    FlowNature,
    Lozenge,
    LozengeType,
    PlanePoint as P,
    PointOutsideModel,
    classify_model,
    leaves_intersect,
    lozenge_at,
    lozenge_census,
    quadrant_complete,
)
from oracles import EXPECTED_COMPLETE, complete_quadrants_oracle, in_strip, quadrant_oracle

MODELS = {"trivial": TRIVIAL, "positive": POSITIVE_STRIP, "negative": NEGATIVE_STRIP}
QUADRANTS = [(1, 1), (1, -1), (-1, 1), (-1, -1)]

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=64)
offsets = st.fractions(min_value=F(-99, 100), max_value=F(99, 100), max_denominator=100)


@st.composite
def strip_points(draw, kind):
    x = draw(rationals)
    d = draw(offsets)
    if kind == "positive":
        return P(x, x - d)
    if kind == "negative":
        return P(x, d - x)
    return P(x, draw(rationals))


def test_leaves_intersect_examples():
    assert leaves_intersect(TRIVIAL, P(0, 0), P(5, 7)) == P(0, 7)
    assert leaves_intersect(POSITIVE_STRIP, P(0, 0), P(F(1, 2), F(1, 2))) == P(0, F(1, 2))
    assert leaves_intersect(NEGATIVE_STRIP, P(F(9, 10), 0), P(0, F(9, 10))) is None
    assert not in_strip("negative", F(9, 10), F(9, 10))


def test_points_outside_rejected():
    with pytest.raises(PointOutsideModel):
        leaves_intersect(POSITIVE_STRIP, P(0, 1), P(0, 0))
    with pytest.raises(PointOutsideModel):
        quadrant_complete(NEGATIVE_STRIP, P(1, 0), "++")
    with pytest.raises(PointOutsideModel):
        lozenge_at(POSITIVE_STRIP, P(2, 0), LozengeType.PLUS_PLUS)


@pytest.mark.parametrize("kind", ["positive", "negative"])
@given(data=st.data())
def test_leaves_intersect_lies_on_both_leaves(kind, data):
    model = MODELS[kind]
    p, q = data.draw(strip_points(kind)), data.draw(strip_points(kind))
    r = leaves_intersect(model, p, q)
    if r is not None:
        assert (r.x, r.y) == (p.x, q.y)
        assert model.contains(r)
    else:
        # the candidate lies off the strip, since leaves are the strip's full
        # horizontal and vertical slices
        assert not in_strip(kind, p.x, q.y)


def test_quadrant_examples():
    assert quadrant_complete(POSITIVE_STRIP, P(0, 0), "++").complete
    res = quadrant_complete(NEGATIVE_STRIP, P(0, 0), "++")
    assert not res.complete
    assert res.witness == (P(F(9, 10), 0), P(0, F(9, 10)))
    for q in QUADRANTS:
        assert quadrant_complete(TRIVIAL, P(17, -3), q)


@pytest.mark.parametrize("kind", ["positive", "negative"])
@given(data=st.data())
def test_quadrants_match_oracle(kind, data):
    model = MODELS[kind]
    p = data.draw(strip_points(kind))
    for q in QUADRANTS:
        res = quadrant_complete(model, p, q)
        assert res.complete == quadrant_oracle(kind, p.x, p.y, *q)
        assert res.complete == (q in EXPECTED_COMPLETE[kind])
        if not res.complete:
            y, z = res.witness
            assert model.contains(y) and model.contains(z)
            assert y.y == p.y and z.x == p.x
            assert (y.x - p.x) * q[0] > 0 and (z.y - p.y) * q[1] > 0
            assert not model.contains(P(y.x, z.y))


def test_lozenge_examples():
    assert lozenge_at(POSITIVE_STRIP, P(0, 0), LozengeType.PLUS_PLUS) == Lozenge(P(0, 0), P(1, 1), LozengeType.PLUS_PLUS)
    assert lozenge_at(TRIVIAL, P(0, 0), LozengeType.PLUS_PLUS) is None
    assert lozenge_at(NEGATIVE_STRIP, P(0, 0), LozengeType.PLUS_MINUS) == Lozenge(P(0, 0), P(1, -1), LozengeType.PLUS_MINUS)
    assert lozenge_at(POSITIVE_STRIP, P(0, 0), LozengeType.PLUS_MINUS) is None
    assert lozenge_at(NEGATIVE_STRIP, P(0, 0), LozengeType.PLUS_PLUS) is None


@pytest.mark.parametrize("kind", ["trivial", "positive", "negative"])
@given(data=st.data())
def test_lozenge_types_and_involution(kind, data):
    model = MODELS[kind]
    p = data.draw(strip_points(kind))
    allowed = {"trivial": set(), "positive": {LozengeType.PLUS_PLUS}, "negative": {LozengeType.PLUS_MINUS}}[kind]
    for t in LozengeType:
        loz = lozenge_at(model, p, t)
        assert (loz is not None) == (t in allowed)
        if loz is None:
            continue
        back = lozenge_at(model, loz.corner2, t, corner=2)
        assert back is not None
        assert {back.corner1, back.corner2} == {loz.corner1, loz.corner2}


@given(data=st.data())
def test_lozenge_interior_has_both_leaf_intersections(data):
    p = data.draw(strip_points("positive"))
    loz = lozenge_at(POSITIVE_STRIP, p, LozengeType.PLUS_PLUS)
    c1, c2 = loz.corner1, loz.corner2
    for i in range(1, 8):
        for j in range(1, 8):
            r = P(c1.x + (c2.x - c1.x) * F(i, 8), c1.y + (c2.y - c1.y) * F(j, 8))
            if not POSITIVE_STRIP.contains(r):
                continue
            # seen from each corner, the point is reached by a leaf crossing
            assert leaves_intersect(POSITIVE_STRIP, P(r.x, c1.y), P(c1.x, r.y)) == r
            assert leaves_intersect(POSITIVE_STRIP, P(r.x, c2.y), P(c2.x, r.y)) == r


@pytest.mark.parametrize(
    "model,nature,census",
    [
        (TRIVIAL, FlowNature.NON_TWISTED_SUSPENSION, set()),
        (POSITIVE_STRIP, FlowNature.POSITIVELY_TWISTED, {LozengeType.PLUS_PLUS}),
        (NEGATIVE_STRIP, FlowNature.NEGATIVELY_TWISTED, {LozengeType.PLUS_MINUS}),
    ],
)
def test_classify_model(model, nature, census):
    assert lozenge_census(model) == census
    assert lozenge_census(model, P(F(1, 3), F(1, 7)) if model.contains(P(F(1, 3), F(1, 7))) else None) == census
    assert classify_model(model) is nature


@pytest.mark.parametrize("kind", ["trivial", "positive", "negative"])
@given(data=st.data())
def test_grid_oracle_agrees_with_single_quadrant_oracle(kind, data):
    p = data.draw(strip_points(kind))
    single = {q for q in QUADRANTS if quadrant_oracle(kind, p.x, p.y, *q)}
    assert single == complete_quadrants_oracle(kind, p.x, p.y)
