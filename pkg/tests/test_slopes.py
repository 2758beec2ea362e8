"""Slope arithmetic: canonical forms, the intersection distance, and the
fractional-linear action."""

import random

import pytest
from hypothesis import given, strategies as st

from chainfill.slopes import (
    EMPTY,
    INFINITY,
    ZERO,
    EmptySlopeError,
    Slope,
    SlopeParseError,
    distance,
    parse_slope,
)


def test_parse_canonical_forms():
    assert parse_slope("3/2") == Slope(3, 2)
    assert parse_slope("-4/-6") == Slope(2, 3)
    assert parse_slope("inf") == INFINITY
    assert parse_slope("-") == EMPTY
    assert parse_slope("7/0") == INFINITY
    assert parse_slope("-5/1") == Slope(-5)
    assert parse_slope("6/-4") == Slope(-3, 2)


def test_parse_rejects_garbage():
    for bad in ["", "x", "1/2/3", "0/0", "1.5", "--2"]:
        with pytest.raises(SlopeParseError):
            parse_slope(bad)


def test_invert():
    assert Slope(-2).invert() == Slope(-1, 2)
    assert INFINITY.invert() == ZERO
    assert ZERO.invert() == INFINITY
    assert EMPTY.invert() == EMPTY


def test_affine():
    # 1 - s at s = -2
    assert Slope(-2).affine(1, -1) == Slope(3)
    assert INFINITY.affine(7, 1) == INFINITY
    # -s - 6 at s = -1
    assert Slope(-1).affine(-6, -1) == Slope(-5)
    assert EMPTY.affine(3, -1) == EMPTY


def test_distance_examples():
    assert distance(INFINITY, ZERO) == 1
    assert distance(Slope(-1), Slope(3)) == 4
    assert distance(Slope(-2), Slope(2)) == 4
    assert distance(Slope(-4), Slope(4)) == 8


def test_distance_rejects_empty():
    with pytest.raises(EmptySlopeError):
        distance(EMPTY, ZERO)
    with pytest.raises(EmptySlopeError):
        distance(ZERO, EMPTY)


slopes = st.one_of(
    st.just(EMPTY),
    st.just(INFINITY),
    st.builds(
        Slope,
        st.integers(min_value=-300, max_value=300),
        st.integers(min_value=-300, max_value=300).filter(lambda q: q != 0),
    ),
)

real_slopes = slopes.filter(lambda s: not s.is_empty)


@given(real_slopes, real_slopes)
def test_distance_symmetric_and_definite(a, b):
    assert distance(a, b) == distance(b, a)
    assert distance(a, a) == 0
    assert (distance(a, b) == 0) == (a == b)


@given(slopes)
def test_invert_is_involution(s):
    assert s.invert().invert() == s


@given(slopes, st.integers(min_value=-9, max_value=9), st.sampled_from([1, -1]))
def test_affine_is_invertible(s, a, b):
    image = s.affine(a, b)
    # the inverse of x -> a + b x is x -> (x - a) / b = -a*b + b*x
    assert image.affine(-a * b, b) == s
    if s.is_empty:
        assert image == EMPTY


@given(slopes)
def test_print_parse_round_trip(s):
    assert parse_slope(str(s)) == s


def random_unimodular(rng):
    """A random element of GL(2, Z), built from elementary matrices."""
    a, b, c, d = 1, 0, 0, 1
    for _ in range(rng.randint(1, 8)):
        k = rng.randint(-4, 4)
        if rng.random() < 0.5:
            a, b = a + k * c, b + k * d
        else:
            c, d = c + k * a, d + k * b
    if rng.random() < 0.5:
        a, b, c, d = c, d, a, b
    assert abs(a * d - b * c) == 1
    return (a, b, c, d)


def test_distance_is_unimodular_invariant():
    rng = random.Random(20260809)
    for _ in range(100):
        m = random_unimodular(rng)
        a = Slope(rng.randint(-40, 40), rng.randint(-40, 40))
        b = Slope(rng.randint(-40, 40), rng.randint(-40, 40))
        if a.is_empty or b.is_empty:
            continue
        assert distance(a.mobius(m), b.mobius(m)) == distance(a, b)


def test_sort_key_order():
    values = [Slope(1, 2), Slope(-2), EMPTY, INFINITY, Slope(1, 3), Slope(0)]
    ordered = sorted(values, key=lambda s: s.sort_key())
    assert ordered[0] == EMPTY
    assert ordered[1] == INFINITY
    assert all(s.is_finite for s in ordered[2:])
