"""Certified arithmetic constants a_k, g_k, B_k, tau_k and c_0(k).

For a prime p write x = 1/p.  The local factor of a_k is

    f(x) = (1 - x)^(k^2) F(k, k; 1; x) = (1 - x)^((k-1)^2) Q(x),
    Q(x) = sum_{n<k} C(k-1, n)^2 x^n,

by Euler's transformation, so every small-prime factor is an exact rational.
The per-prime term of B_k is -(1/k) log p * x f'(x)/f(x), which after the
same transformation is the positive rational

    k log p / (p - 1) * sum_n C(k-1,n)^2 n/(n+1) x^n / Q(x).

Primes above the cutoff are handled through the power series of log f and
of the B_k term, summed against prime zeta values.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from flint import arb, ctx, fmpz

from .ball import PrecisionError, ball
from .exact import TruncatedSeries, binomial, factorial, series_log
from .primes import GUARD, euler_gamma, log_prime_sum, prime_zeta, primes_up_to

__all__ = [
    "hyp2f1",
    "hyp2f1_exact",
    "compute_g",
    "local_factor",
    "log_local_coefficients",
    "b_term_coefficients",
    "root_radius_bound",
    "compute_a",
    "compute_B",
    "compute_tau",
    "compute_c0",
    "ArithmeticConstants",
    "constants_for",
    "lincoeff_diagnostic",
    "log_a_growth_diagnostic",
    "DEFAULT_BITS",
    "DEFAULT_CUTOFF",
    "DEFAULT_TAIL_ORDER",
]

DEFAULT_BITS = 256
DEFAULT_CUTOFF = 10**5
DEFAULT_TAIL_ORDER = 30
DEFAULT_MIN_ACCURACY = 64


def _rising(a, n: int):
    out = 1
    for i in range(n):
        out *= a + i
    return out


# ---------------------------------------------------------------------------
# hypergeometric 2F1 at rational points

def hyp2f1(a: int, b: int, c: int, t, bits: int = DEFAULT_BITS) -> arb:
    """F(a, b; c; t) for positive integers a, b, c and rational 0 <= t < 1.

    The partial sums are exact.  Past index N every term ratio is at most
    q_N = t * max((a+N)/(N+1), 1) * max((b+N)/(c+N), 1), so the tail is
    bounded by T_N / (1 - q_N).
    """
    t = Fraction(t)
    if not 0 <= t < 1:
        raise ValueError("hyp2f1 needs 0 <= t < 1")
    if c < 1:
        raise ValueError("hyp2f1 needs c >= 1")
    total = Fraction(0)
    term = Fraction(1)
    n = 0
    eps = Fraction(1, 2 ** (bits + 4))
    while True:
        total += term
        term = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * t
        n += 1
        if term == 0:
            tail = Fraction(0)
            break
        q = t * max(Fraction(a + n, n + 1), 1) * max(Fraction(b + n, c + n), 1)
        if q < 1:
            tail = term / (1 - q)
            if tail <= eps * total:
                break
    with ctx.workprec(bits + GUARD):
        return ball(total) + arb(0, ball(tail))


def hyp2f1_exact(a: int, b: int, c: int, t) -> Fraction:
    """Exact F(a, b; c; t) when Euler's transformation makes it terminate.

    Needs integers with c - a <= 0 and c - b <= 0; then
    F(a,b;c;t) = (1-t)^(c-a-b) F(c-a, c-b; c; t) and the right series is finite.
    """
    t = Fraction(t)
    if t == 1:
        raise ValueError("t = 1 is a singular point")
    a2, b2 = c - a, c - b
    if a2 > 0 or b2 > 0:
        raise ValueError("transformed series does not terminate")
    total = Fraction(0)
    term = Fraction(1)
    n = 0
    while term:
        total += term
        term = term * (a2 + n) * (b2 + n) / ((c + n) * (n + 1)) * t
        n += 1
    return (1 - t) ** (c - a - b) * total


def compute_g(k: int) -> Fraction:
    """g_k = (k^2)! prod_{j<k} j!/(j+k)!  (an integer)."""
    if k < 1:
        raise ValueError("k must be positive")
    g = factorial(k * k)
    for j in range(k):
        g = g * factorial(j) / factorial(j + k)
    return g


# ---------------------------------------------------------------------------
# local factors

@lru_cache(maxsize=128)
def _q_data(k: int):
    n = k - 1
    sq = tuple(math.comb(n, j) ** 2 for j in range(k))
    L = math.lcm(*range(1, k + 1))
    # C^2 * n/(n+1), scaled by L to stay integral
    qr = tuple(sq[j] * j * (L // (j + 1)) for j in range(k))
    return sq, qr, L


def local_factor(k: int, p: int) -> tuple[int, int]:
    """(num, den) with num/den = (1-1/p)^(k^2) F(k,k;1;1/p) exactly."""
    sq, _, _ = _q_data(k)
    n = k - 1
    qv = 0
    for c in sq:  # Horner in p, highest power first
        qv = qv * p + c
    num = (p - 1) ** (n * n) * qv
    den = p ** (n * n + n)
    return num, den


def _b_local(k: int, p: int) -> tuple[int, int]:
    """(num, den) with k*log p * num/den equal to the B_k term of p."""
    sq, qr, L = _q_data(k)
    top = 0
    bot = 0
    for c, d in zip(sq, qr):
        bot = bot * p + c
        top = top * p + d
    return top, (p - 1) * bot * L


@lru_cache(maxsize=256)
def log_local_coefficients(k: int, order: int) -> tuple[Fraction, ...]:
    """c_0..c_order of log f(x) = sum c_m x^m (c_0 = c_1 = 0)."""
    sq, _, _ = _q_data(k)
    Q = TruncatedSeries.of(sq, order)
    logQ = series_log(Q)
    n2 = (k - 1) ** 2
    return tuple(logQ[m] - (Fraction(n2, m) if m else 0) for m in range(order + 1))


@lru_cache(maxsize=256)
def b_term_coefficients(k: int, order: int) -> tuple[Fraction, ...]:
    """d_0..d_order of k [x/(1-x) - x F(k+1,k+1;2;x)/F(k,k;1;x)] = sum d_m x^m.

    Built by series division straight from the hypergeometric series.
    """
    F1 = TruncatedSeries.of(
        [binomial(k + n - 1, n) ** 2 for n in range(order + 1)], order
    )
    F2 = TruncatedSeries.of(
        [Fraction(_rising(k + 1, n) ** 2, _rising(2, n) * math.factorial(n)) for n in range(order + 1)],
        order,
    )
    geo = TruncatedSeries.of([0] + [1] * order, order)
    h = (geo - (F2 / F1).shift(1)) * k
    return h.coeffs


def root_radius_bound(k: int) -> Fraction:
    """Upper bound for the largest root modulus of Q (Fujiwara).

    Q is palindromic, so the same number bounds 1/|root| as well.
    """
    n = k - 1
    if n == 0:
        return Fraction(0)
    best = 0.0
    for j in range(1, n + 1):
        a = math.comb(n, j) ** 2 if j < n else 0.5
        best = max(best, a ** (1.0 / j))
    # a little slack for floating roots
    return Fraction(2 * best * (1 + 1e-9) + 1e-9).limit_denominator(10**6) + Fraction(1, 10**6)


def _tail_remainders(k: int, P: int, M: int) -> tuple[arb, arb]:
    """Bounds for the neglected orders m > M in the a_k and B_k tails."""
    rho = root_radius_bound(k)
    if 2 * rho >= P:
        raise PrecisionError(
            f"prime cutoff {P} too small for k={k}: need above {2 * float(rho):.0f}"
        )
    Pb = arb(P)
    r = ball(rho) / Pb
    n2 = (k - 1) ** 2
    # log f:   |c_m| <= ((k-1)^2 + (k-1) rho^m) / m,  sum_{p>P} p^-m <= P^(1-m)/(m-1)
    ra = Pb * (
        n2 * Pb ** (-(M + 1)) / (1 - 1 / Pb)
        + (k - 1) * r ** (M + 1) / (1 - r)
    ) / ((M + 1) * M)
    # B term:  |d_m| = m |c_m| / k,  sum_{p>P} log p p^-m <= P^(1-m)(log P/(m-1) + 1/(m-1)^2)
    w = Pb.log() / M + arb(1) / (M * M)
    rb = Pb * w * (
        arb(n2) / k * Pb ** (-(M + 1)) / (1 - 1 / Pb)
        + arb(k - 1) / k * r ** (M + 1) / (1 - r)
    )
    return ra.upper(), rb.upper()


def _check_accuracy(value: arb, what: str, k: int, min_bits: int):
    if value.rad() != 0 and value.rel_accuracy_bits() < min_bits:
        raise PrecisionError(
            f"{what} for k={k} certified to only {value.rel_accuracy_bits()} bits"
            f" (need {min_bits}); raise the prime cutoff or tail order"
        )


def _budget(bits: int, P: int) -> int:
    return bits + GUARD + math.ceil(math.log2(P + 1))


def compute_log_a(k: int, bits: int = DEFAULT_BITS, cutoff: int = DEFAULT_CUTOFF,
                  tail_order: int = DEFAULT_TAIL_ORDER) -> arb:
    """log a_k as a ball."""
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return arb(0)
    block = primes_up_to(cutoff)
    ra, _ = _tail_remainders(k, cutoff, tail_order)
    prec = _budget(bits, cutoff)
    with ctx.workprec(prec):
        total = arb(0)
        for p in block.primes:
            num, den = local_factor(k, p)
            if 2 * num < den or num > 2 * den:
                # far from 1 (tiny primes at large k): log1p would lose the argument
                total += (arb(fmpz(num)) / arb(fmpz(den))).log()
            else:
                total += (arb(fmpz(num - den)) / arb(fmpz(den))).log1p()
        cm = log_local_coefficients(k, tail_order)
        for m in range(2, tail_order + 1):
            if cm[m]:
                total += ball(cm[m]) * prime_zeta(m, block, bits)
        total += arb(0, ra)
    return total


def compute_a(k: int, bits: int = DEFAULT_BITS, cutoff: int = DEFAULT_CUTOFF,
              tail_order: int = DEFAULT_TAIL_ORDER,
              min_accuracy_bits: int = DEFAULT_MIN_ACCURACY) -> arb:
    """a_k = prod_p (1-1/p)^(k^2) F(k,k;1;1/p)."""
    la = compute_log_a(k, bits, cutoff, tail_order)
    with ctx.workprec(_budget(bits, cutoff)):
        a = la.exp()
    _check_accuracy(a, "a_k", k, min_accuracy_bits)
    return a


def compute_B(k: int, bits: int = DEFAULT_BITS, cutoff: int = DEFAULT_CUTOFF,
              tail_order: int = DEFAULT_TAIL_ORDER,
              min_accuracy_bits: int = DEFAULT_MIN_ACCURACY) -> arb:
    """B_k = sum_p k log p [1/(p-1) - F(k+1,k+1;2;1/p) / (p F(k,k;1;1/p))]."""
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return arb(0)
    block = primes_up_to(cutoff)
    _, rb = _tail_remainders(k, cutoff, tail_order)
    prec = _budget(bits, cutoff)
    with ctx.workprec(prec):
        total = arb(0)
        for p in block.primes:
            num, den = _b_local(k, p)
            total += arb(p).log() * arb(fmpz(num)) / arb(fmpz(den))
        total *= k
        dm = b_term_coefficients(k, tail_order)
        for m in range(2, tail_order + 1):
            if dm[m]:
                total += ball(dm[m]) * log_prime_sum(m, block, bits)
        total += arb(0, rb)
    _check_accuracy(total, "B_k", k, min_accuracy_bits)
    return total


def compute_tau(k: int, bits: int = DEFAULT_BITS, **kw) -> arb:
    """tau_k = 2 B_k + 2 gamma k."""
    B = compute_B(k, bits, **kw)
    with ctx.workprec(bits + GUARD):
        return 2 * B + 2 * k * euler_gamma(bits + GUARD)


def compute_c0(k: int, bits: int = DEFAULT_BITS, **kw) -> arb:
    """c_0(k) = a_k g_k / (k^2)!."""
    a = compute_a(k, bits, **kw)
    with ctx.workprec(bits + GUARD):
        return a * ball(compute_g(k) / factorial(k * k))


# ---------------------------------------------------------------------------
# bundled constants with a shared cache

@dataclass(frozen=True)
class ArithmeticConstants:
    k: int
    a: arb
    g: Fraction
    B: arb
    tau: arb
    c0: arb
    gamma: arb
    bits: int
    cutoff: int
    tail_order: int
    log_a: arb = field(repr=False, default=None)

    def as_row(self) -> dict:
        return {"k": self.k, "a_k": self.a, "g_k": self.g, "B_k": self.B,
                "tau_k": self.tau, "c0": self.c0}


_const_lock = threading.Lock()
_const_cache: dict[tuple[int, int, int, int], ArithmeticConstants] = {}


def constants_for(k: int, bits: int = DEFAULT_BITS, cutoff: int = DEFAULT_CUTOFF,
                  tail_order: int = DEFAULT_TAIL_ORDER,
                  min_accuracy_bits: int = DEFAULT_MIN_ACCURACY) -> ArithmeticConstants:
    key = (k, bits, cutoff, tail_order)
    hit = _const_cache.get(key)
    if hit is not None:
        return hit
    la = compute_log_a(k, bits, cutoff, tail_order)
    prec = _budget(bits, cutoff)
    with ctx.workprec(prec):
        a = la.exp()
    _check_accuracy(a, "a_k", k, min_accuracy_bits)
    B = compute_B(k, bits, cutoff, tail_order, min_accuracy_bits)
    g = compute_g(k)
    gamma = euler_gamma(bits + GUARD)
    with ctx.workprec(bits + GUARD):
        tau = 2 * B + 2 * k * gamma
        c0 = a * ball(g / factorial(k * k))
    out = ArithmeticConstants(k, a, g, B, tau, c0, gamma, bits, cutoff, tail_order, la)
    with _const_lock:
        _const_cache.setdefault(key, out)
    return _const_cache[key]


# ---------------------------------------------------------------------------
# diagnostics

def lincoeff_diagnostic(k: int, w: int, first_half: bool, bits: int = DEFAULT_BITS) -> arb:
    """sgn * (k / w!) * sum_{p <= k^2} (log p)^w / p.

    Approximates the Taylor coefficient of the arithmetic factor for a tuple
    with a single nonzero entry of size w.
    """
    if k < 2 or w < 1:
        raise ValueError("need k >= 2 and w >= 1")
    sgn = (-1) ** (w + 1) if first_half else -1
    with ctx.workprec(bits + GUARD):
        s = arb(0)
        for p in primes_up_to(k * k).primes:
            s += arb(p).log() ** w / p
        return sgn * k * s / math.factorial(w)


def log_a_growth_diagnostic(k: int, bits: int = DEFAULT_BITS, **kw) -> dict:
    """Compare log a_k with -k^2 log(2 e^gamma log k)."""
    la = compute_log_a(k, bits, **kw)
    with ctx.workprec(bits + GUARD):
        model = -k * k * (2 * euler_gamma(bits).exp() * arb(k).log()).log()
        dev = (la - model) / model
    return {"k": k, "log_a": la, "model": model, "relative_deviation": dev}
