import pytest
from hypothesis import given, strategies as st

from aoc.torus_homology import (
    BoundaryInvariant,
    InvalidBoundaryClass,
    NonNegativeLink,
    TorusHomologyClass as C,
    check_partial_admissible,
    intersection_form,
    positivizing_coefficient,
    surgery_invariant,
    surgery_transform,
    validate_boundary_class,
)
from oracles import basis_change, brute_positivizing_k, det2

ints = st.integers(-1000, 1000)
classes = st.builds(C, ints, ints)


def test_intersection_basis_pairing():
    assert intersection_form(C(1, 0), C(0, 1)) == 1
    assert intersection_form(C(0, 1), C(1, 0)) == -1


def test_intersection_example_matches_determinant():
    assert intersection_form(C(1, -1), C(2, -3)) == det2((1, -1), (2, -3)) == -1


@given(classes)
def test_self_intersection_zero(c):
    assert intersection_form(c, c) == 0


@given(classes, classes)
def test_intersection_antisymmetric(a, b):
    assert intersection_form(a, b) == -intersection_form(b, a)


def test_surgery_examples():
    assert surgery_transform(C(1, -1), 3) == C(4, -1)
    assert surgery_transform(C(7, 2), 0) == C(7, 2)
    assert surgery_transform(C(2, -3), -1) == C(-1, -3)
    assert (2 - (-1) * (-3), -3) == basis_change(2, -3, -1)


@given(classes, ints)
def test_surgery_matches_basis_change(c, k):
    out = surgery_transform(c, k)
    assert (out.along_parallel, out.along_meridian) == basis_change(c.along_parallel, c.along_meridian, k)


@given(classes, ints)
def test_surgery_inverse_and_link_invariant(c, k):
    assert surgery_transform(surgery_transform(c, k), -k) == c
    assert surgery_transform(c, k).along_meridian == c.along_meridian


@given(classes, classes, ints)
def test_surgery_preserves_intersection(a, b, k):
    assert intersection_form(surgery_transform(a, k), surgery_transform(b, k)) == intersection_form(a, b)


@pytest.mark.parametrize("mult,link,k", [(-5, -2, 3), (1, -1, 0), (-1, -1, 2)])
def test_positivizing_examples(mult, link, k):
    assert positivizing_coefficient(BoundaryInvariant(mult, link)) == k
    assert brute_positivizing_k(mult, link) == k


@given(st.integers(-200, 200).filter(bool), st.integers(-50, -1))
def test_positivizing_minimal(mult, link):
    k = positivizing_coefficient(BoundaryInvariant(mult, link))
    assert k == brute_positivizing_k(mult, link)
    assert mult - k * link > 0
    if k >= 1:
        assert mult - (k - 1) * link <= 0


def test_positivizing_rejects_nonnegative_link():
    with pytest.raises(NonNegativeLink):
        positivizing_coefficient(BoundaryInvariant(2, 0))


def test_surgery_invariant_keeps_period():
    out = surgery_invariant(BoundaryInvariant(-3, -2, period=4), 2)
    assert (out.mult, out.link, out.period) == (1, -2, 4)


@pytest.mark.parametrize(
    "mult,link,birkhoff,violation",
    [
        (2, -1, True, None),
        (1, 0, True, "ZeroLinkOnBirkhoff"),
        (1, 0, False, None),
        (1, 2, False, "PositiveLink"),
        (0, -1, False, "ZeroMultiplicity"),
    ],
)
def test_admissibility(mult, link, birkhoff, violation):
    v = check_partial_admissible(BoundaryInvariant(mult, link), birkhoff)
    assert v.accepted == (violation is None)
    assert v.violation == violation


def test_boundary_class_validation():
    validate_boundary_class(C(2, 4))
    with pytest.raises(InvalidBoundaryClass):
        validate_boundary_class(C(0, 1))
    with pytest.raises(InvalidBoundaryClass):
        validate_boundary_class(C(2, 4), embedded=True)
    validate_boundary_class(C(2, 3), embedded=True)


def test_types_are_checked():
    with pytest.raises(TypeError):
        C(1.5, 0)
    with pytest.raises(ValueError):
        BoundaryInvariant(1, -1, period=0)
