"""Exact arithmetic shared by the rest of the package.

Rationals are plain :class:`fractions.Fraction` objects, which already keep
lowest terms with a positive denominator after every operation.  On top of
that this module provides dense truncated power series and polynomials in a
symbolic variable ``k`` together with exact Lagrange interpolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

ExactRational = Fraction

__all__ = [
    "ExactRational",
    "factorial",
    "binomial",
    "TruncatedSeries",
    "series_log",
    "series_exp",
    "KPolynomial",
    "poly_interpolate",
]


def factorial(n: int) -> Fraction:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return Fraction(math.factorial(n))


def binomial(n: int, r: int) -> Fraction:
    if n < 0:
        raise ValueError(f"binomial with negative n={n}")
    if r < 0 or r > n:
        return Fraction(0)
    return Fraction(math.comb(n, r))


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series c_0 + c_1 x + ... + c_M x^M modulo x^(M+1)."""

    coeffs: tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("truncation order must be non-negative")
        c = tuple(_as_fraction(v) for v in self.coeffs[: self.order + 1])
        c = c + (Fraction(0),) * (self.order + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def of(cls, coeffs: Iterable, order: int) -> "TruncatedSeries":
        return cls(tuple(coeffs), order)

    @classmethod
    def constant(cls, c, order: int) -> "TruncatedSeries":
        return cls((c,), order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        return cls((0, 1), order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n <= self.order else Fraction(0)

    def _match(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(other, self.order)

    def __add__(self, other):
        other = self._match(other)
        m = min(self.order, other.order)
        return TruncatedSeries(tuple(self[i] + other[i] for i in range(m + 1)), m)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        return self + (-self._match(other))

    def __rsub__(self, other):
        return self._match(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = _as_fraction(other)
            return TruncatedSeries(tuple(c * a for a in self.coeffs), self.order)
        m = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(m + 1):
            out.append(sum((a[i] * b[n - i] for i in range(n + 1) if a[i] and b[n - i]), Fraction(0)))
        return TruncatedSeries(tuple(out), m)

    __rmul__ = __mul__

    def reciprocal(self) -> "TruncatedSeries":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        out = [inv0]
        for n in range(1, self.order + 1):
            s = sum((a[i] * out[n - i] for i in range(1, n + 1)), Fraction(0))
            out.append(-s * inv0)
        return TruncatedSeries(tuple(out), self.order)

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self * (1 / _as_fraction(other))
        return self * other.reciprocal()

    def derivative(self) -> "TruncatedSeries":
        """Formal derivative; the order drops by one (kept at least 0)."""
        c = tuple(n * self.coeffs[n] for n in range(1, self.order + 1))
        return TruncatedSeries(c or (Fraction(0),), max(self.order - 1, 0))

    def integral(self) -> "TruncatedSeries":
        """Antiderivative with zero constant, order raised by one."""
        c = (Fraction(0),) + tuple(self.coeffs[n] / (n + 1) for n in range(self.order + 1))
        return TruncatedSeries(c, self.order + 1)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(x)) for an inner series without constant term (Horner)."""
        if inner[0] != 0:
            raise ValueError("composition needs an inner series with zero constant term")
        m = min(self.order, inner.order)
        inner = TruncatedSeries(inner.coeffs, m)
        acc = TruncatedSeries.constant(self.coeffs[m], m)
        for n in range(m - 1, -1, -1):
            acc = acc * inner + self.coeffs[n]
        return acc

    def shift(self, n: int = 1) -> "TruncatedSeries":
        """Multiply by x^n and truncate."""
        return TruncatedSeries((Fraction(0),) * n + self.coeffs, self.order)


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    """log(s) for s with constant term 1, via log(s)' = s'/s."""
    if s[0] != 1:
        raise ValueError("series_log requires constant term 1")
    M = s.order
    if M == 0:
        return TruncatedSeries.constant(0, 0)
    a = s.coeffs
    # n*L_n = n*a_n - sum_{j=1}^{n-1} j*L_j*a_{n-j}
    L = [Fraction(0)] * (M + 1)
    for n in range(1, M + 1):
        acc = n * a[n]
        for j in range(1, n):
            if L[j] and a[n - j]:
                acc -= j * L[j] * a[n - j]
        L[n] = acc / n
    return TruncatedSeries(tuple(L), M)


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """exp(s) for s with constant term 0."""
    if s[0] != 0:
        raise ValueError("series_exp requires constant term 0")
    M = s.order
    a = s.coeffs
    E = [Fraction(1)] + [Fraction(0)] * M
    for n in range(1, M + 1):
        acc = Fraction(0)
        for j in range(1, n + 1):
            if a[j] and E[n - j]:
                acc += j * a[j] * E[n - j]
        E[n] = acc / n
    return TruncatedSeries(tuple(E), M)


@dataclass(frozen=True)
class KPolynomial:
    """Polynomial in the symbolic variable k, ascending coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        c = [_as_fraction(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots(cls, roots: Sequence[int], lead=1) -> "KPolynomial":
        p = cls((lead,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, k) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc

    def __add__(self, other: "KPolynomial") -> "KPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return KPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other) -> "KPolynomial":
        if not isinstance(other, KPolynomial):
            return KPolynomial(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return KPolynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return KPolynomial(tuple(out))

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for n in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[n]
            if c == 0:
                continue
            mono = "" if n == 0 else ("k" if n == 1 else f"k^{n}")
            if mono and abs(c) == 1:
                term = mono
            else:
                term = f"{abs(c)}" + (f"*{mono}" if mono else "")
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out


def poly_interpolate(points: Sequence[tuple[int, Fraction]]) -> KPolynomial:
    """Exact Lagrange interpolation through points with distinct abscissae."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    total = KPolynomial(())
    for i, (xi, (_, yi)) in enumerate(zip(xs, points)):
        yi = _as_fraction(yi)
        if yi == 0:
            continue
        basis = KPolynomial((1,))
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * KPolynomial((-xj, 1))
                denom *= xi - xj
        total = total + basis * (yi / denom)
    return total
