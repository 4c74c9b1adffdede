"""Brute-force residues by multivariate coefficient extraction.

The residue of prod z_i^{-(2k - a_i)} times a polynomial-times-exponential
integrand at the origin is just a Taylor coefficient, so both residue
functions can be read off an explicitly expanded polynomial.  No exponent
above 2k - 1 is ever needed, which lets every product drop such monomials.

This module is deliberately naive; it exists to check the fast recursions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .tuples import FullTuple, HalfTuple

__all__ = ["SparseMultiPoly", "vandermonde", "nk_oracle", "nk_oracle_absolute",
           "p_oracle", "p_oracle_absolute"]


class SparseMultiPoly:
    """Polynomial in v variables with every exponent capped at ``cap``.

    Exponent vectors are packed into one integer, ``width`` bits per variable.
    The width leaves room for one carry bit so that after adding two packed
    keys a single mask test finds any variable above the cap.
    Coefficients may be ints or Fractions.
    """

    __slots__ = ("nvars", "cap", "width", "terms", "_over")

    def __init__(self, nvars: int, cap: int, terms: dict | None = None):
        self.nvars = nvars
        self.cap = cap
        # fields hold values up to 2*cap without spilling into the neighbour
        self.width = (2 * cap).bit_length() + 1
        self.terms = {} if terms is None else terms
        self._over = None

    # packing -------------------------------------------------------------
    def pack(self, exps: Sequence[int]) -> int:
        key = 0
        for i, e in enumerate(exps):
            key |= e << (i * self.width)
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        mask = (1 << self.width) - 1
        return tuple((key >> (i * self.width)) & mask for i in range(self.nvars))

    def _overflow_ok(self):
        # adding (2^(width-1) - 1 - cap) to every field sets the top bit of a
        # field exactly when that field exceeds cap
        if self._over is None:
            top = 1 << (self.width - 1)
            bias = 0
            probe = 0
            for i in range(self.nvars):
                bias |= (top - 1 - self.cap) << (i * self.width)
                probe |= top << (i * self.width)
            self._over = (bias, probe)
        return self._over

    # construction --------------------------------------------------------
    @classmethod
    def monomial(cls, nvars: int, cap: int, exps: Sequence[int], coeff=1) -> "SparseMultiPoly":
        p = cls(nvars, cap)
        if max(exps, default=0) <= cap and coeff:
            p.terms[p.pack(exps)] = coeff
        return p

    @classmethod
    def linear(cls, nvars: int, cap: int, coeffs: dict[int, object]) -> "SparseMultiPoly":
        """sum_i c_i z_i."""
        p = cls(nvars, cap)
        for i, c in coeffs.items():
            if c:
                e = [0] * nvars
                e[i] = 1
                p.terms[p.pack(e)] = c
        return p

    @classmethod
    def univariate(cls, nvars: int, cap: int, var: int, coeffs: Sequence) -> "SparseMultiPoly":
        """sum_t c_t z_var^t for t <= cap."""
        p = cls(nvars, cap)
        for t, c in enumerate(coeffs[: cap + 1]):
            if c:
                p.terms[t << (var * p.width)] = c
        return p

    def copy(self) -> "SparseMultiPoly":
        return SparseMultiPoly(self.nvars, self.cap, dict(self.terms))

    # arithmetic ----------------------------------------------------------
    def __add__(self, other: "SparseMultiPoly") -> "SparseMultiPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SparseMultiPoly(self.nvars, self.cap, out)

    def scale(self, c) -> "SparseMultiPoly":
        if not c:
            return SparseMultiPoly(self.nvars, self.cap)
        return SparseMultiPoly(self.nvars, self.cap, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "SparseMultiPoly") -> "SparseMultiPoly":
        if (self.nvars, self.cap) != (other.nvars, other.cap):
            raise ValueError("incompatible polynomial rings")
        bias, probe = self._overflow_ok()
        out: dict[int, object] = {}
        get = out.get
        small, large = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        for ka, ca in small.terms.items():
            for kb, cb in large.terms.items():
                key = ka + kb
                if (key + bias) & probe:
                    continue
                out[key] = get(key, 0) + ca * cb
        return SparseMultiPoly(self.nvars, self.cap, {k: v for k, v in out.items() if v})

    def square(self) -> "SparseMultiPoly":
        return self * self

    def coefficient(self, exps: Sequence[int]):
        if any(e < 0 or e > self.cap for e in exps):
            return 0
        return self.terms.get(self.pack(exps), 0)

    def __len__(self):
        return len(self.terms)

    def items(self):
        """(exponent tuple, coefficient) in lexicographic exponent order."""
        rows = [(self.unpack(k), c) for k, c in self.terms.items()]
        rows.sort()
        return rows


def vandermonde(nvars: int, cap: int, variables: Sequence[int]) -> SparseMultiPoly:
    """prod_{i<j} (z_j - z_i) over the listed variables."""
    p = SparseMultiPoly.monomial(nvars, cap, [0] * nvars)
    for a in range(len(variables)):
        for b in range(a + 1, len(variables)):
            p = p * SparseMultiPoly.linear(nvars, cap, {variables[b]: 1, variables[a]: -1})
    return p


def _exp_series(nvars: int, cap: int, var: int, c: Fraction, scale: int) -> SparseMultiPoly:
    """scale * exp(c z_var) truncated at cap; integer coefficients when possible."""
    coeffs = [Fraction(scale) * c**t / math.factorial(t) for t in range(cap + 1)]
    if all(x.denominator == 1 for x in coeffs):
        coeffs = [int(x) for x in coeffs]
    return SparseMultiPoly.univariate(nvars, cap, var, coeffs)


def _check_k(k: int, lo: int, hi: int):
    if not lo <= k <= hi:
        raise ValueError(f"oracle supports k in [{lo}, {hi}], got {k}")


@lru_cache(maxsize=8)
def _nk_poly(k: int) -> tuple[SparseMultiPoly, int]:
    cap = 2 * k - 1
    nv = k
    scale = math.factorial(cap)
    F = vandermonde(nv, cap, range(nv)).square()
    for i in range(nv):
        F = F * _exp_series(nv, cap, i, Fraction(1), scale)
    return F, scale**nv


def nk_oracle_absolute(k: int, lam: HalfTuple | Iterable[int]) -> Fraction:
    """N_k^0(lambda) from coefficient extraction in Delta^2 exp(sum z)."""
    _check_k(k, 2, 5)
    ent = lam.padded() if isinstance(lam, HalfTuple) else tuple(lam) + (0,) * (k - len(tuple(lam)))
    if len(ent) != k:
        raise ValueError("too many entries")
    if any(e >= 2 * k for e in ent):
        return Fraction(0)
    F, denom = _nk_poly(k)
    coef = Fraction(F.coefficient([2 * k - 1 - e for e in ent]), denom)
    return coef * (-1) ** math.comb(k, 2) / math.factorial(k)


def nk_oracle(k: int, lam: HalfTuple | Iterable[int]) -> Fraction:
    return nk_oracle_absolute(k, lam) / nk_oracle_absolute(k, ())


@lru_cache(maxsize=8)
def _p_poly(k: int, x: Fraction) -> tuple[SparseMultiPoly, int]:
    cap = 2 * k - 1
    nv = 2 * k
    first = list(range(k))
    second = list(range(k, 2 * k))
    V1 = vandermonde(nv, cap, first)
    V2 = vandermonde(nv, cap, second)
    F = V1.square() * V2.square()
    for i in first:
        for j in second:
            F = F * SparseMultiPoly.linear(nv, cap, {i: 1, j: -1})
    # integer coefficients: exp(+-x z/2) scaled by cap! * (2 * den)^cap
    half = x / 2
    scale = math.factorial(cap) * half.denominator**cap
    for i in first:
        F = F * _exp_series(nv, cap, i, half, scale)
    for j in second:
        F = F * _exp_series(nv, cap, j, -half, scale)
    return F, scale**nv


def p_oracle_absolute(k: int, alpha: FullTuple, x=1, allow_large: bool = False) -> Fraction:
    """p_k(x, alpha) from coefficient extraction in the full integrand."""
    _check_k(k, 2, 4 if allow_large else 3)
    if alpha.k != k:
        raise ValueError("tuple length does not match k")
    if any(e >= 2 * k for e in alpha.entries):
        return Fraction(0)
    F, denom = _p_poly(k, Fraction(x))
    coef = Fraction(F.coefficient([2 * k - 1 - e for e in alpha.entries]), denom)
    return coef * (-1) ** k / math.factorial(k) ** 2


def p_oracle(k: int, alpha: FullTuple, x=1, allow_large: bool = False) -> Fraction:
    zero = FullTuple(k, (0,) * (2 * k))
    return p_oracle_absolute(k, alpha, x, allow_large) / p_oracle_absolute(k, zero, x, allow_large)
