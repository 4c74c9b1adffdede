from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zml.exact import (
    KPolynomial,
    TruncatedSeries,
    binomial,
    factorial,
    poly_interpolate,
    series_exp,
    series_log,
)

fractions = st.fractions(max_denominator=10**6).filter(lambda q: abs(q.numerator) < 10**9)


@pytest.mark.property
@given(fractions, fractions, fractions)
def test_distributive_law(a, b, c):
    assert a * (b + c) == a * b + a * c


def test_factorial_and_binomial():
    assert factorial(0) == 1 and factorial(10) == 3628800
    assert binomial(100, 4) == 3921225
    assert binomial(5, 7) == 0
    with pytest.raises(ValueError):
        factorial(-1)


def test_reciprocal_of_geometric_series():
    one_minus_x = TruncatedSeries.of([1, -1], 8)
    assert one_minus_x.reciprocal().coeffs == (Fraction(1),) * 9


def test_log_of_one_plus_x():
    s = series_log(TruncatedSeries.of([1, 1], 6))
    assert s.coeffs == tuple(Fraction((-1) ** (n + 1), n) if n else Fraction(0) for n in range(7))


def test_exp_coefficients():
    e = series_exp(TruncatedSeries.variable(7))
    assert e.coeffs == tuple(1 / factorial(n) for n in range(8))


def test_log_rejects_bad_constant():
    with pytest.raises(ValueError):
        series_log(TruncatedSeries.of([2, 1], 3))
    with pytest.raises(ZeroDivisionError):
        TruncatedSeries.of([0, 1], 3).reciprocal()


def test_derivative_integral_roundtrip():
    s = TruncatedSeries.of([3, 1, Fraction(1, 2), 7], 3)
    assert s.integral().derivative() == s
    assert s.shift(2).coeffs == (0, 0, 3, 1)


def test_compose_with_exp_minus_one():
    # log(1 + (e^x - 1)) = x
    x = TruncatedSeries.variable(9)
    em1 = series_exp(x) - 1
    lg = TruncatedSeries.of([0] + [Fraction((-1) ** (n + 1), n) for n in range(1, 10)], 9)
    assert lg.compose(em1) == x


@pytest.mark.property
@given(st.lists(fractions, min_size=1, max_size=12))
def test_exp_log_roundtrip(tail):
    s = TruncatedSeries.of([1] + tail, len(tail))
    assert series_exp(series_log(s)) == s


@pytest.mark.property
@given(st.lists(fractions, min_size=1, max_size=8, unique=False), st.data())
def test_interpolation_reproduces_nodes(values, data):
    xs = data.draw(st.lists(st.integers(-50, 50), min_size=len(values), max_size=len(values), unique=True))
    pts = list(zip(xs, values))
    poly = poly_interpolate(pts)
    assert poly.degree < len(pts)
    for x, y in pts:
        assert poly(x) == y


def test_interpolation_recovers_polynomial():
    p = KPolynomial.from_roots([0, -1, -2], 1)
    assert poly_interpolate([(k, p(k)) for k in range(2, 7)]) == p
    with pytest.raises(ValueError):
        poly_interpolate([(1, 1), (1, 2)])


def test_kpolynomial_printing():
    assert str(KPolynomial.from_roots([0, 3, -3, -2, -1], -3)) == "-3*k^5 - 9*k^4 + 21*k^3 + 81*k^2 + 54*k"
    assert str(KPolynomial(())) == "0"
    assert KPolynomial((Fraction(1, 2), 1)).is_integral() is False
