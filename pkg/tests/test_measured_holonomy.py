from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from aoc.measured_holonomy import (
    CrossingEvent as Ev,
    FoliationModel,
    HolonomyResult,
    LambdaLength as L,
    LengthMismatch,
    MissingLambdaHint,
    NonIncreasingUPositions,
    PreconditionViolated,
    Side,
    SingularityData as S,
    UnknownSingularity,
    apply_crossing,
    crossing_exponent,
    generalized_holonomy,
    positive_side_contraction,
    validate_event_spacing,
)
from oracles import crossing_oracle, eval_terms

R, LEFT = Side.SINGULAR_ON_RIGHT, Side.SINGULAR_ON_LEFT
LAMBDAS = [F(2), F(3, 2), F(7, 4)]


def model(**sings):
    return FoliationModel({k: S(*v) for k, v in sings.items()}, lambda_hint=F(2))


@pytest.mark.parametrize(
    "mult,period,side,k", [(2, 1, R, -2), (2, 1, LEFT, 2), (-1, 3, R, 3)]
)
def test_exponent_examples(mult, period, side, k):
    assert crossing_exponent(S(mult, -1, period), side) == k


@given(st.integers(-10, 10).filter(bool), st.integers(1, 5))
def test_exponent_sides_opposite(mult, period):
    s = S(mult, -1, period)
    assert crossing_exponent(s, R) == -crossing_exponent(s, LEFT) == -mult * period


def test_apply_crossing_examples():
    m = model(a=(2, -1), b=(1, -1))
    out = apply_crossing(L.unit(), Ev("a", R, F(1, 2), 0), m)
    assert out == L({0: F(1, 2), -2: F(1, 2)})
    assert out.evaluate(4) == F(17, 32) == crossing_oracle(F(1), F(1, 2), -2, F(4))
    assert apply_crossing(L.unit(), Ev("b", LEFT, 1, 0), m) == L({1: 1})


def test_zero_net_exponent_leaves_length():
    m = model(a=(2, -1))
    ln = L({3: F(2, 5), -1: 7})
    # right then left at the same singularity nets to the identity on pure splits
    out = apply_crossing(apply_crossing(ln, Ev("a", R, 1, 0), m), Ev("a", LEFT, 1, 1), m)
    assert out == ln


def test_unknown_singularity():
    with pytest.raises(UnknownSingularity):
        apply_crossing(L.unit(), Ev("zz", R, 1, 0), model(a=(1, -1)))


terms = st.dictionaries(st.integers(-4, 4), st.fractions(min_value=0, max_value=5, max_denominator=9), max_size=4)
splits = st.fractions(min_value=0, max_value=1, max_denominator=16)


@given(terms, splits, st.integers(-5, 5).filter(bool), st.sampled_from([R, LEFT]), st.sampled_from(LAMBDAS))
def test_apply_crossing_matches_evaluation(t, split, mult, side, lam):
    m = FoliationModel({"s": S(mult, -1)})
    ln = L(t)
    out = apply_crossing(ln, Ev("s", side, split, 0), m)
    k = crossing_exponent(m.singularities["s"], side)
    assert out.evaluate(lam) == crossing_oracle(eval_terms(ln.terms, lam), split, k, lam)
    assert all(c >= 0 for c in out.terms.values())
    if split > 0 and not ln.is_zero():
        assert (out.evaluate(lam) < ln.evaluate(lam)) == (k < 0)
        assert (out.evaluate(lam) > ln.evaluate(lam)) == (k > 0)


def test_holonomy_examples():
    m = model(a=(1, -1), b=(3, -1), c=(2, -1))
    assert generalized_holonomy(L.unit(), [], None, m) == HolonomyResult(True, L.unit())
    res = generalized_holonomy(L.unit(), [Ev("a", R, 1, 0), Ev("b", R, 1, 1)], None, m)
    assert res.defined and res.length == L({-4: 1})
    res = generalized_holonomy(L.unit(), [], [Ev("c", LEFT, 1, 0)], m)
    assert res.blow_up and res.tail_factor == L({2: 1})


def test_holonomy_requires_increasing_positions():
    m = model(a=(1, -1))
    with pytest.raises(NonIncreasingUPositions):
        generalized_holonomy(L.unit(), [Ev("a", R, 1, 1)], [Ev("a", R, 1, 1)], m)


@given(st.lists(st.integers(-3, 3).filter(bool), min_size=1, max_size=3), st.sampled_from(LAMBDAS))
def test_pure_tail_blow_up_is_lambda_independent(ks, lam):
    sings = {f"s{k}": S(k, -1) for k in set(ks)}
    tail = [Ev(f"s{k}", LEFT, 1, i) for i, k in enumerate(ks)]
    res = generalized_holonomy(L.unit(), [], tail, FoliationModel(sings))
    assert res.blow_up == (sum(ks) > 0)
    assert res.blow_up == (res.tail_factor.evaluate(lam) > 1)


def test_contraction_examples():
    m = model(a=(1, -1), b=(3, -1), n=(-1, -1))
    v = positive_side_contraction(m, [Ev("a", R, 1, 0), Ev("b", R, 1, 1)])
    assert v and v.details["exponents"] == [-1, -3]
    with pytest.raises(PreconditionViolated) as e:
        positive_side_contraction(m, [Ev("a", R, 1, 0), Ev("n", R, 1, 1)])
    assert e.value.index == 1
    with pytest.raises(PreconditionViolated):
        positive_side_contraction(m, [Ev("a", LEFT, 1, 0)])


@given(st.lists(st.tuples(st.integers(1, 5), st.integers(1, 3), splits), min_size=1, max_size=100), terms)
def test_contraction_never_lengthens(spec, t):
    sings = {f"s{i}": S(mult, -1, p) for i, (mult, p, _) in enumerate(spec)}
    events = [Ev(f"s{i}", R, split, i) for i, (_, _, split) in enumerate(spec)]
    ln = L(t) if t else L.unit()
    v = positive_side_contraction(FoliationModel(sings), events, ln)
    assert v
    for lam in LAMBDAS:
        assert v.details["output"].evaluate(lam) <= ln.evaluate(lam)


def test_spacing_examples():
    m = model(a=(1, -1))
    evs = [Ev("a", R, 1, 0), Ev("a", R, 1, 2)]
    half = L({0: F(1, 2)})
    assert validate_event_spacing(evs, [half, half], 1, 1, m)
    evs = [Ev("a", R, 1, 0), Ev("a", R, 1, F(1, 2))]
    v = validate_event_spacing(evs, [half, half], 1, 1, m)
    assert not v and v.details["pair"] == (0, 1)
    assert validate_event_spacing(evs[:1], [half], 1, 1, m)
    with pytest.raises(LengthMismatch):
        validate_event_spacing(evs, [half], 1, 1, m)
    with pytest.raises(MissingLambdaHint):
        validate_event_spacing(evs, [half, half], 1, 1, FoliationModel({"a": S(1, -1)}))


def test_length_and_model_validation():
    with pytest.raises(ValueError):
        L({0: -1})
    with pytest.raises(ValueError):
        FoliationModel({}, lambda_hint=1)
    with pytest.raises(ValueError):
        S(1, 0)
    with pytest.raises(ValueError):
        Ev("a", R, F(3, 2), 0)
    assert L({0: 0}).is_zero()


def test_mixed_tail_verdict_follows_large_lambda():
    # the verdict reads the top exponent, which decides growth only for large
    # lam; at lam = 2 this tail actually shrinks lengths
    sings = {"up": S(1, -1), "down": S(3, -1)}
    tail = [Ev("up", LEFT, F(1, 2), 0), Ev("down", R, F(1, 2), 1)]
    res = generalized_holonomy(L.unit(), [], tail, FoliationModel(sings))
    assert res.blow_up
    assert res.tail_factor.evaluate(2) < 1
    assert res.tail_factor.evaluate(100) > 1
