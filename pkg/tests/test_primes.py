import math

import mpmath
import numpy as np
import pytest
from flint import arb, ctx

from zml.primes import (
    PrimeBlock,
    euler_gamma,
    log_prime_sum,
    mobius_table,
    prime_zeta,
    primes_up_to,
    zeta_deriv_int,
    zeta_int,
    zeta_log_deriv,
)

# independent values (mpmath at 45 digits)
ZETA_PRIME_2 = "-0.937548254315843753702574094567864977897860289"
NEG_LOG_DERIV_2 = "0.569960993094532806399864360019730002403482281"
PRIME_ZETA_2 = "0.452247420041065498506543364832247934173231343"
PRIME_ZETA_3 = "0.174762639299443536423113314665706700975412122"
LOG_PRIME_SUM_2 = "0.493091109368764462197826205056491258055588126"
EULER_GAMMA = "0.577215664901532860606512090082402431042159336"


def near(b: arb, text: str, tol: float = 1e-40) -> bool:
    with ctx.workprec(200):
        return abs(float((b - arb(text)).mid())) < tol and b.rad() < tol


def test_sieve_counts():
    assert len(primes_up_to(10**5)) == 9592
    assert primes_up_to(10**5).primes[-1] == 99991
    assert primes_up_to(10**6, segment=1000).primes == primes_up_to(10**6).primes
    assert len(primes_up_to(10**6)) == 78498
    assert primes_up_to(2).primes == (2,)
    assert len(PrimeBlock.empty()) == 0


def test_prime_block_identity_is_cutoff():
    assert primes_up_to(100) == PrimeBlock(100, ())
    assert hash(primes_up_to(100)) == hash(PrimeBlock(100, ()))


def test_mobius():
    mu = mobius_table(30)
    assert mu[1:13] == (1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0)
    assert mu[30] == -1


def test_zeta_even_values_exact():
    with ctx.workprec(300):
        assert zeta_int(2).overlaps(arb.pi() ** 2 / 6)
        assert zeta_int(4).overlaps(arb.pi() ** 4 / 90)
    assert zeta_int(2).rel_accuracy_bits() >= 256


@pytest.mark.parametrize("s", [3, 5, 7, 13, 40, 101])
def test_zeta_against_flint(s):
    with ctx.workprec(300):
        assert zeta_int(s).overlaps(arb(s).zeta())


def test_zeta_derivative_and_log_derivative():
    assert near(zeta_deriv_int(2), ZETA_PRIME_2)
    assert near(zeta_log_deriv(2), NEG_LOG_DERIV_2)
    mpmath.mp.dps = 40
    for s in (3, 6, 11):
        ref = mpmath.zeta(s, derivative=1)
        assert abs(float(zeta_deriv_int(s).mid()) - float(ref)) < 1e-15


def test_bad_arguments():
    for s in (1, 0, 2.5):
        with pytest.raises(ValueError):
            zeta_int(s)
    with pytest.raises(ValueError):
        prime_zeta(1)


def test_prime_sums_against_oracle():
    assert near(prime_zeta(2), PRIME_ZETA_2)
    assert near(prime_zeta(3), PRIME_ZETA_3)
    assert near(log_prime_sum(2), LOG_PRIME_SUM_2)


def test_euler_gamma():
    assert near(euler_gamma(256), EULER_GAMMA)
    assert euler_gamma(256).rel_accuracy_bits() >= 256
    with ctx.workprec(400):
        assert euler_gamma(300).overlaps(arb.const_euler())


def test_exclusion_splits_the_sum():
    block = primes_up_to(1000)
    head = sum(1 / arb(p) ** 2 for p in block)
    with ctx.workprec(300):
        assert (prime_zeta(2, block) + head).overlaps(prime_zeta(2))
    tail = prime_zeta(2, block)
    # tail is below the integral bound sum_{n > 1000} n^-2 < 1/1000
    assert 0 < tail < arb(1) / 1000


@pytest.mark.property
@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_moebius_path_matches_direct_summation(m):
    N = 10**7
    p = np.asarray(primes_up_to(N).primes, dtype=np.float64)
    terms = p ** (-m)
    direct = math.fsum(terms)
    # each term carries at most a few ulps of error
    err = 4 * 2.0**-52 * direct
    tail_bound = N ** (1 - m) / (m - 1)
    lo, hi = direct - err, direct + err + tail_bound
    value = prime_zeta(m)
    assert lo <= float(value.mid()) <= hi
    # positive remainder above the cutoff
    assert float(value.mid()) - direct > -err
