import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lambda_umbral.ring import (
    as_rational,
    binomial,
    factorial,
    format_rational,
    parse_rational,
    signed_binomial,
)


@pytest.mark.parametrize(
    "text, value",
    [("3/4", Fraction(3, 4)), ("-2/6", Fraction(-1, 3)), ("7", Fraction(7)), ("-0", Fraction(0)), (" 1/2 ", Fraction(1, 2))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1.5", "1e3", "a/b", "1 / 2", "", "--1", "1/-2"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


@given(st.fractions())
def test_format_parse_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_format_is_reduced():
    assert format_rational(Fraction(4, 8)) == "1/2"
    assert format_rational(Fraction(-6, 3)) == "-2"


def test_as_rational_refuses_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("2/3") == Fraction(2, 3)
    assert as_rational(3) == 3


def test_known_values():
    assert binomial(12, 6) == 924
    assert factorial(10) == 3628800
    assert binomial(5, 7) == 0
    assert binomial(5, -1) == 0


def test_binomial_negative_upper_rejected():
    with pytest.raises(ValueError):
        binomial(-1, 2)


@given(st.integers(0, 40), st.integers(-3, 45))
def test_binomial_matches_factorial_formula(m, k):
    expected = math.factorial(m) // (math.factorial(k) * math.factorial(m - k)) if 0 <= k <= m else 0
    assert binomial(m, k) == expected


@given(st.integers(-20, 20), st.integers(0, 20))
def test_signed_binomial_is_falling_factorial(m, k):
    # C(m, k) = m (m-1) ... (m-k+1) / k! for every integer m
    falling = math.prod(m - j for j in range(k))
    assert signed_binomial(m, k) == Fraction(falling, math.factorial(k))


def test_signed_binomial_negative_lower():
    assert signed_binomial(-3, -1) == 0
