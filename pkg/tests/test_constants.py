import math
from fractions import Fraction

import mpmath
import pytest
from flint import arb, ctx

from zml.ball import PrecisionError, ball
from zml.constants import (
    _b_local,
    compute_B,
    compute_g,
    compute_log_a,
    compute_tau,
    log_a_growth_diagnostic,
    constants_for,
    hyp2f1,
    hyp2f1_exact,
    lincoeff_diagnostic,
    local_factor,
    log_local_coefficients,
    root_radius_bound,
)
from zml.primes import euler_gamma, primes_up_to

SMALL_PRIMES = primes_up_to(97).primes


def test_g_values():
    assert [compute_g(k) for k in range(1, 6)] == [1, 2, 42, 24024, 701149020]
    assert all(compute_g(k).denominator == 1 for k in range(1, 30))


@pytest.mark.property
@pytest.mark.parametrize("k", range(1, 21))
def test_hypergeometric_paths_agree(k):
    for p in SMALL_PRIMES:
        t = Fraction(1, p)
        exact = hyp2f1_exact(k, k, 1, t)
        series = hyp2f1(k, k, 1, t, bits=128)
        assert series.overlaps(ball(exact))
        assert series.rel_accuracy_bits() >= 128


@pytest.mark.property
@pytest.mark.parametrize("k", [1, 2, 3, 7, 12])
def test_local_factors_are_exact(k):
    for p in SMALL_PRIMES[:10]:
        t = Fraction(1, p)
        num, den = local_factor(k, p)
        assert Fraction(num, den) == (1 - t) ** (k * k) * hyp2f1_exact(k, k, 1, t)
        bn, bd = _b_local(k, p)
        ratio = hyp2f1_exact(k + 1, k + 1, 2, t) / (p * hyp2f1_exact(k, k, 1, t))
        assert k * Fraction(bn, bd) == k * (Fraction(1, p - 1) - ratio)


def test_hypergeometric_against_mpmath():
    mpmath.mp.dps = 40
    for a, b, c, t in [(3, 5, 2, Fraction(1, 3)), (1, 1, 2, Fraction(1, 2)), (7, 7, 1, Fraction(2, 11))]:
        ref = mpmath.hyp2f1(a, b, c, mpmath.mpf(t.numerator) / t.denominator)
        assert abs(float(hyp2f1(a, b, c, t).mid()) - float(ref)) < 1e-14 * float(ref)
    with pytest.raises(ValueError):
        hyp2f1(1, 1, 1, 1)
    with pytest.raises(ValueError):
        hyp2f1_exact(1, 1, 3, Fraction(1, 2))


def test_log_coefficients_vanish_at_first_order():
    for k in (2, 5, 9):
        c = log_local_coefficients(k, 6)
        assert c[0] == 0 and c[1] == 0


def test_k1_and_k2_closed_forms():
    c1 = constants_for(1)
    assert c1.a == 1 and c1.B.contains(0)
    with ctx.workprec(300):
        assert c1.tau.overlaps(2 * euler_gamma(300))
    c2 = constants_for(2)
    with ctx.workprec(300):
        pi2 = arb.pi() ** 2
        assert c2.a.overlaps(6 / pi2)
        assert c2.c0.overlaps(1 / (2 * pi2))
    assert c2.c0.rel_accuracy_bits() >= 200


def test_table_anchors():
    c10 = constants_for(10)
    assert abs(float(c10.c0.mid()) / 3.548884925e-148 - 1) < 1e-9
    assert abs(float(c10.tau.mid()) - 66.4347078305) < 1e-9
    assert c10.c0.rel_accuracy_bits() >= 200


@pytest.mark.property
def test_refinement_is_monotone():
    for k in (5, 10):
        coarse_a = compute_log_a(k, 128, 10**4, 15)
        coarse_b = compute_B(k, 128, 10**4, 15)
        fine_a = compute_log_a(k, 128, 2 * 10**4, 30)
        fine_b = compute_B(k, 128, 2 * 10**4, 30)
        assert coarse_a.contains(fine_a.mid())
        assert coarse_b.contains(fine_b.mid())
        assert fine_b.rad() <= coarse_b.rad()


@pytest.mark.property
def test_tau_growth_over_range():
    prev = 0.0
    for k in range(5, 101):
        t = compute_tau(k, bits=128)
        q = float(t.mid()) / (4 * k * math.log(k))
        assert 0.5 < q < 1.0
        assert q > prev
        prev = q
        if k == 10:
            assert abs(q - 0.721) < 1e-3
        if k == 50:
            assert abs(q - 0.828) < 1e-3


def test_precision_failures_are_reported():
    assert 2 * root_radius_bound(50) > 1000
    with pytest.raises(PrecisionError, match="k=50"):
        compute_B(50, 128, 1000, 30)
    with pytest.raises(PrecisionError):
        compute_B(10, 128, 1000, 4, min_accuracy_bits=10**4)


def test_log_a_growth_report(capsys):
    for k in range(10, 51, 10):
        d = log_a_growth_diagnostic(k, 128)
        print(f"k={k} log a_k={d['log_a'].str(10)} model={d['model'].str(10)}"
              f" rel dev={float(d['relative_deviation'].mid()):.4f}")
        assert d["log_a"] < 0
    assert "k=50" in capsys.readouterr().out


def test_lincoeff_diagnostic_signs():
    assert lincoeff_diagnostic(5, 2, True) < 0
    assert lincoeff_diagnostic(5, 1, True) > 0
    assert lincoeff_diagnostic(5, 1, False) < 0
    with pytest.raises(ValueError):
        lincoeff_diagnostic(1, 1, True)
