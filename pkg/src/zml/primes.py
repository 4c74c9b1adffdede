"""Primes, zeta at integers, and prime sums with certified tails.

The large-prime tails of Euler products are handled by Moebius inversion:

    sum_p p^-m          = sum_d mu(d)/d * log zeta(d m)
    sum_p log p * p^-m  = sum_d mu(d) * (-zeta'/zeta)(d m)

minus the explicitly summed small primes.  zeta and zeta' at integers come
from Euler-Maclaurin summation with a rigorous remainder bound.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from flint import arb, ctx, fmpq, fmpz


__all__ = [
    "PrimeBlock",
    "primes_up_to",
    "mobius_table",
    "zeta_int",
    "zeta_deriv_int",
    "zeta_log_deriv",
    "prime_zeta",
    "log_prime_sum",
    "euler_gamma",
]

GUARD = 24


@dataclass(frozen=True, eq=False)
class PrimeBlock:
    """All primes up to ``cutoff``; sums "over p > block" start after it."""

    cutoff: int
    primes: tuple[int, ...]

    @classmethod
    def empty(cls) -> "PrimeBlock":
        return cls(1, ())

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def __eq__(self, other):
        return isinstance(other, PrimeBlock) and self.cutoff == other.cutoff

    def __hash__(self):
        return hash(("PrimeBlock", self.cutoff))


def _small_sieve(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags)


@lru_cache(maxsize=16)
def primes_up_to(P: int, segment: int = 1 << 18) -> PrimeBlock:
    """Segmented sieve of Eratosthenes."""
    if P < 1:
        raise ValueError("cutoff must be positive")
    if P < 2:
        return PrimeBlock.empty()
    root = math.isqrt(P)
    base = _small_sieve(root)
    found = [base]
    lo = root + 1
    while lo <= P:
        hi = min(lo + segment - 1, P)
        flags = np.ones(hi - lo + 1, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start > hi:
                continue
            flags[start - lo :: p] = False
        found.append(np.flatnonzero(flags) + lo)
        lo = hi + 1
    allp = np.concatenate(found)
    return PrimeBlock(P, tuple(int(p) for p in allp))


@lru_cache(maxsize=8)
def mobius_table(n: int) -> tuple[int, ...]:
    """mu(0..n) with mu(0) = 0."""
    mu = [1] * (n + 1)
    mu[0] = 0
    is_comp = [False] * (n + 1)
    for p in range(2, n + 1):
        if is_comp[p]:
            continue
        for q in range(p, n + 1, p):
            if q != p:
                is_comp[q] = True
            mu[q] = -mu[q]
        pp = p * p
        for q in range(pp, n + 1, pp):
            mu[q] = 0
    return tuple(mu)


# ---------------------------------------------------------------------------
# zeta(s), zeta'(s) at integers by Euler-Maclaurin

def _rising(s: arb, n: int) -> arb:
    out = arb(1)
    for i in range(n):
        out *= s + i
    return out


def _em_remainder(sigma: arb, N: int, M: int) -> arb:
    """Upper bound for the Euler-Maclaurin remainder after M correction terms.

    |R| <= 4 (sigma)_{2M} / (2 pi)^{2M} * N^{1 - sigma - 2M} / (sigma + 2M - 1)
    """
    two_pi = 2 * arb.pi()
    return (
        4 * _rising(sigma, 2 * M) / two_pi ** (2 * M)
        * arb(N) ** (1 - sigma - 2 * M) / (sigma + 2 * M - 1)
    ).upper()


def _em_parameters(s: int, prec: int) -> tuple[int, int]:
    # direct summation is enough when 2^-s is already tiny relative to the target
    N = max(4, math.ceil(2 ** (prec / (s - 1)))) if s > prec / 8 else None
    if N is not None and N <= 64:
        return N, 1
    M = max(2, prec // 6 + 2)
    return max(8, prec // 6 + 2), M


_zeta_lock = threading.Lock()
_zeta_cache: dict[tuple[int, int], tuple[arb, arb]] = {}


def _zeta_pair(s: int, bits: int) -> tuple[arb, arb]:
    """(zeta(s), zeta'(s)) as balls with relative radius about 2^-bits."""
    key = (s, bits)
    hit = _zeta_cache.get(key)
    if hit is not None:
        return hit
    prec = bits + GUARD
    target = arb(2) ** (-(bits + 2))
    N, M = _em_parameters(s, prec)
    with ctx.workprec(prec + 2 * math.ceil(math.log2(N + 2))):
        sa = arb(s)
        while True:
            rem = _em_remainder(sa, N, M)
            # derivative remainder by Cauchy's estimate on a circle of radius 1/2
            rem_d = 2 * _em_remainder(sa - arb(1) / 2, N, M) * (
                _rising(sa + arb(1) / 2, 2 * M) / _rising(sa - arb(1) / 2, 2 * M)
            ).upper()
            if rem < target and rem_d < target:
                break
            N *= 2
        z = arb(0)
        dz = arb(0)
        for n in range(2, N):
            t = arb(n) ** (-s)
            z += t
            dz -= arb(n).log() * t
        z += 1
        Nb = arb(N)
        logN = Nb.log()
        NS = Nb ** (-s)
        head = Nb * NS / (s - 1)
        z += head + NS / 2
        dz += -logN * head - head / (s - 1) - logN * NS / 2
        # (s)_{2j-1} N^{-s-2j+1} and its s-derivative
        poch = sa
        dpoch = arb(1)
        power = NS / Nb
        fact = arb(2)
        for j in range(1, M + 1):
            b = arb(fmpq.bernoulli(2 * j)) / fact
            z += b * poch * power
            dz += b * (dpoch - logN * poch) * power
            # advance (s)_{2j-1} -> (s)_{2j+1}
            for i in (2 * j - 1, 2 * j):
                dpoch = dpoch * (sa + i) + poch
                poch = poch * (sa + i)
            power = power / (Nb * Nb)
            fact = fact * (2 * j + 1) * (2 * j + 2)
        z += arb(0, rem)
        dz += arb(0, rem_d)
    with _zeta_lock:
        _zeta_cache[key] = (z, dz)
    return z, dz


def _check_arg(s: int):
    if int(s) != s or s < 2:
        raise ValueError(f"integer argument >= 2 required, got {s}")


def zeta_int(s: int, bits: int = 256) -> arb:
    _check_arg(s)
    return _zeta_pair(int(s), int(bits))[0]


def zeta_deriv_int(s: int, bits: int = 256) -> arb:
    _check_arg(s)
    return _zeta_pair(int(s), int(bits))[1]


def zeta_log_deriv(s: int, bits: int = 256) -> arb:
    """-zeta'(s)/zeta(s) = sum over n of Lambda(n) n^-s."""
    _check_arg(s)
    z, dz = _zeta_pair(int(s), int(bits))
    with ctx.workprec(bits + GUARD):
        return -dz / z


# ---------------------------------------------------------------------------
# prime sums

def _moebius_tail(m: int, D: int, log_weighted: bool) -> arb:
    """Rigorous bound on the neglected Moebius terms d > D.

    Uses |log zeta(s)| <= zeta(s) - 1 <= 2^-s (1 + 2/(s-1)) and
    sum_{n>=2} log n n^-s <= 2^-s log 2 + 2^(1-s) (log 2/(s-1) + 1/(s-1)^2).
    Consecutive d raise the argument by m, so the terms shrink by at least 2^-m.
    """
    s0 = (D + 1) * m
    two = arb(2)
    if log_weighted:
        l2 = two.log()
        head = two ** (-s0) * (l2 + 2 * (l2 / (s0 - 1) + arb(1) / (s0 - 1) ** 2))
    else:
        head = two ** (-s0) * (1 + arb(2) / (s0 - 1)) / (D + 1)
    return (head / (1 - two ** (-m))).upper()


def _moebius_depth(m: int, prec: int, log_weighted: bool) -> tuple[int, arb]:
    target = arb(2) ** (-(prec + 4))
    D = max(1, prec // m - 4)
    while True:
        rem = _moebius_tail(m, D, log_weighted)
        if rem < target:
            return D, rem
        D += 1


def _excluded_sum(m: int, exclude: PrimeBlock, log_weighted: bool) -> arb:
    total = arb(0)
    for p in exclude.primes:
        t = arb(fmpq(1, fmpz(p) ** m))
        if log_weighted:
            t *= arb(p).log()
        total += t
    return total


def _tail_prec(m: int, bits: int, exclude: PrimeBlock) -> int:
    # the result is about cutoff^(1-m); keep bits relative to that
    return bits + GUARD + math.ceil(m * math.log2(exclude.cutoff + 1)) + 8


@lru_cache(maxsize=4096)
def _prime_zeta_cached(m: int, exclude: PrimeBlock, bits: int, log_weighted: bool) -> arb:
    prec = _tail_prec(m, bits, exclude)
    with ctx.workprec(prec):
        D, rem = _moebius_depth(m, prec, log_weighted)
        mu = mobius_table(D)
        total = arb(0)
        for d in range(1, D + 1):
            if mu[d] == 0:
                continue
            if log_weighted:
                total += mu[d] * zeta_log_deriv(d * m, prec)
            else:
                total += arb(mu[d]) / d * zeta_int(d * m, prec).log()
        total += arb(0, rem)
        total -= _excluded_sum(m, exclude, log_weighted)
    return total


def prime_zeta(m: int, exclude: PrimeBlock | None = None, bits: int = 256) -> arb:
    """Ball for sum of p^-m over primes above ``exclude.cutoff``."""
    _check_arg(m)
    return _prime_zeta_cached(int(m), exclude or PrimeBlock.empty(), int(bits), False)


def log_prime_sum(m: int, exclude: PrimeBlock | None = None, bits: int = 256) -> arb:
    """Ball for sum of log(p) p^-m over primes above ``exclude.cutoff``."""
    _check_arg(m)
    return _prime_zeta_cached(int(m), exclude or PrimeBlock.empty(), int(bits), True)


# ---------------------------------------------------------------------------
# Euler's constant

@lru_cache(maxsize=16)
def euler_gamma(bits: int = 256) -> arb:
    """Brent-McMillan: gamma = U/V with error below pi e^{-4n}.

    U = sum (n^j/j!)^2 (H_j - log n), V = sum (n^j/j!)^2.
    """
    n = math.ceil((bits + 4) * math.log(2) / 4) + 1
    K = math.ceil(4.971 * n) + 1
    prec = bits + GUARD + math.ceil(math.log2(K)) + 4 * n // 2
    with ctx.workprec(prec):
        logn = arb(n).log()
        t = arb(1)
        H = arb(0)
        U = -logn
        V = arb(1)
        for j in range(1, K + 1):
            t = t * n * n / (j * j)
            H += arb(1) / j
            U += t * (H - logn)
            V += t
        # tail j > K: ratio (n/(j+1))^2 <= 1/4 since K >= 2n, |H_j - log n| <= j
        t_next = t * n * n / ((K + 1) * (K + 1))
        tailV = (t_next * 4 / 3).upper()
        tailU = (t_next * (K + 1) * 2).upper()
        U += arb(0, tailU)
        V += arb(tailV / 2, tailV / 2)
        g = U / V
        g += arb(0, (arb.pi() * (arb(-4 * n)).exp()).upper())
    return g
