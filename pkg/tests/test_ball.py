from fractions import Fraction

import pytest
from flint import arb, ctx
from hypothesis import given, settings
from hypothesis import strategies as st

from zml.ball import (
    accuracy_bits,
    ball,
    ball_from_decimal,
    certified_digits,
    format_ball,
    midpoint_fraction,
    radius_fraction,
    relative_radius,
    upper_bound,
)


def contains_exactly(b: arb, q: Fraction) -> bool:
    return abs(midpoint_fraction(b) - q) <= radius_fraction(b)


rationals = st.fractions(max_denominator=10**12).filter(lambda q: abs(q) < 10**15)


@pytest.mark.property
@settings(max_examples=1000)
@given(rationals)
def test_ball_contains_its_rational(q):
    with ctx.workprec(64):
        assert contains_exactly(ball(q), q)


@pytest.mark.property
@settings(max_examples=1000)
@given(st.integers(-10**12, 10**12), st.integers(0, 12), st.integers(-300, 300))
def test_decimal_ball_contains_printed_value(man, frac_digits, exp):
    digits = str(abs(man)).rjust(frac_digits + 1, "0")
    text = ("-" if man < 0 else "") + digits[: len(digits) - frac_digits]
    if frac_digits:
        text += "." + digits[len(digits) - frac_digits :]
    text += f"e{exp}"
    b = ball_from_decimal(text)
    q = Fraction(text)
    assert contains_exactly(b, q)
    half_ulp = Fraction(1, 2) * Fraction(10) ** (exp - frac_digits)
    # radii are stored with a 30-bit mantissa, rounded up twice
    assert half_ulp <= radius_fraction(b) <= half_ulp * (1 + Fraction(1, 2**26))


def test_decimal_parsing_errors():
    for bad in ("", "abc", "1.2.3", "e5"):
        with pytest.raises(ValueError):
            ball_from_decimal(bad)


def test_exact_radius_queries():
    b = ball(Fraction(3, 4), Fraction(1, 8))
    assert Fraction(1, 6) <= relative_radius(b) < Fraction(1, 6) + Fraction(1, 10**8)
    assert Fraction(7, 8) <= upper_bound(b) < Fraction(7, 8) + Fraction(1, 10**8)
    assert certified_digits(b) == 0
    assert accuracy_bits(ball(1)) > 10**6
    with pytest.raises(ZeroDivisionError):
        relative_radius(arb(0, 1))


def test_format_uses_certified_digits():
    b = ball_from_decimal("3.548884925e-148")
    assert certified_digits(b) == 9
    assert format_ball(b) == "3.54888492e-148"
    assert format_ball(b, 4) == "3.549e-148"
    assert "+/-" in format_ball(b, show_error=True)
    assert format_ball(ball(0)) == "0"
