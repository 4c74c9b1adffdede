"""Coefficient asymptotics, ratio tables, the coefficient bound and moment integrals.

All integrals reduce to I_n(T) = int_0^T log(t/2pi)^n dt.  With U = log(T/2pi)
and t = 2 pi e^u,

    I_n(T) = 2 pi int_{-inf}^{U} u^n e^u du
           = 2 pi [ (-1)^n n! + sum_{i>=0} U^(n+i+1) / (i! (n+i+1)) ],

a form with no cancellation when U >= 0.  For U < 0 the incomplete gamma
sum n! e^U sum_{j<=n} |U|^j / j! is used instead.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from flint import arb, ctx

from .ball import ball, ball_from_decimal, midpoint_fraction, radius_fraction
from .constants import ArithmeticConstants, compute_g, constants_for
from .exact import binomial, factorial
from .fixtures import RawCoefficient, read_coefficient_file, table1_rows
from .primes import GUARD, euler_gamma

__all__ = [
    "OutsideProvenRangeWarning",
    "MissingDataError",
    "p1_coefficients",
    "CoefficientRecord",
    "CoefficientTable",
    "c_r_asymptotic",
    "RatioRow",
    "ratio_table",
    "BoundVerdict",
    "check_coefficient_bound",
    "polynomial_bound_check",
    "integral_log_power",
    "integral_Pk",
    "first_zero_ordinate",
    "integral_bound",
    "leading_term",
    "MTReport",
    "mT_bound",
    "unitary_c_r",
    "quad_crosscheck",
    "as_ball",
]


class OutsideProvenRangeWarning(UserWarning):
    """r is outside the range where the asymptotic formula is proven."""


class MissingDataError(LookupError):
    def __init__(self, missing: Sequence[tuple[int, int]]):
        self.missing = list(missing)
        listed = ", ".join(f"(k={k}, r={r})" for k, r in self.missing)
        super().__init__(f"missing coefficient records: {listed}")


def as_ball(x, bits: int = 256) -> arb:
    """Ball for ints, Fractions and decimal strings meant as exact parameters."""
    if isinstance(x, arb):
        return x
    with ctx.workprec(max(ctx.prec, bits + GUARD)):
        if isinstance(x, (str, float)):
            return ball(Fraction(x))
        return ball(x)


def _hull(a: arb, b: arb) -> arb:
    lo = min(midpoint_fraction(a) - radius_fraction(a), midpoint_fraction(b) - radius_fraction(b))
    hi = max(midpoint_fraction(a) + radius_fraction(a), midpoint_fraction(b) + radius_fraction(b))
    return ball((lo + hi) / 2) + arb(0, ball((hi - lo) / 2))


# ---------------------------------------------------------------------------
# coefficient tables

@dataclass(frozen=True)
class CoefficientRecord:
    k: int
    r: int
    value: arb
    text: str
    source: str


class CoefficientTable:
    """At most one record per (k, r), values as half-ulp balls of their decimal text."""

    def __init__(self, records: Iterable[CoefficientRecord] = ()):
        self._rows: dict[tuple[int, int], CoefficientRecord] = {}
        for rec in records:
            self.add(rec)

    def add(self, rec: CoefficientRecord):
        if not 0 <= rec.r <= rec.k * rec.k:
            raise ValueError(f"r={rec.r} outside 0..k^2 for k={rec.k}")
        key = (rec.k, rec.r)
        if key in self._rows:
            raise ValueError(f"duplicate record for k={rec.k}, r={rec.r}")
        self._rows[key] = rec

    @classmethod
    def from_raw(cls, raw: Iterable[RawCoefficient], source: str) -> "CoefficientTable":
        return cls(CoefficientRecord(x.k, x.r, ball_from_decimal(x.text), x.text, source) for x in raw)

    @classmethod
    def from_file(cls, path, source: str | None = None) -> "CoefficientTable":
        return cls.from_raw(read_coefficient_file(path), source or str(path))

    @classmethod
    def table1(cls) -> "CoefficientTable":
        rows = table1_rows()
        return cls.from_raw((RawCoefficient(r.k, r.r, r.c) for r in rows), "table1.csv")

    def get(self, k: int, r: int) -> CoefficientRecord | None:
        return self._rows.get((k, r))

    def ks(self) -> list[int]:
        return sorted({k for k, _ in self._rows})

    def rows_for(self, k: int) -> list[CoefficientRecord]:
        return [self._rows[key] for key in sorted(self._rows) if key[0] == k]

    def __len__(self):
        return len(self._rows)

    def __iter__(self):
        return iter(self._rows[key] for key in sorted(self._rows))


def _consts(k: int, bits: int, constants: ArithmeticConstants | None) -> ArithmeticConstants:
    if constants is not None:
        if constants.k != k:
            raise ValueError("constants belong to a different k")
        return constants
    return constants_for(k, bits)


def c_r_asymptotic(k: int, r: int, bits: int = 256, constants: ArithmeticConstants | None = None) -> arb:
    """tau_k^r C(k^2, r) c_0(k)."""
    if not 0 <= r <= k * k:
        raise ValueError(f"r={r} outside 0..{k * k}")
    if r >= k:
        warnings.warn(f"r={r} >= k={k}: outside the proven range of the asymptotic",
                      OutsideProvenRangeWarning, stacklevel=2)
    c = _consts(k, bits, constants)
    with ctx.workprec(bits + GUARD):
        return c.tau**r * ball(binomial(k * k, r)) * c.c0


@dataclass(frozen=True)
class RatioRow:
    k: int
    r: int
    ratio: arb
    identity_ok: bool | None = None  # rows r = 0, 1 only


def ratio_table(table: CoefficientTable, k: int, r_max: int, bits: int = 256,
                constants: ArithmeticConstants | None = None) -> list[RatioRow]:
    """c_r(k) / (c_0(k) C(k^2, r) tau_k^r) for r = 0..r_max.

    Rows 0 and 1 are exact identities, so their ``identity_ok`` flag records
    whether the ball contains 1.
    """
    missing = [(k, r) for r in range(r_max + 1) if table.get(k, r) is None]
    if missing:
        raise MissingDataError(missing)
    c = _consts(k, bits, constants)
    rows = []
    with ctx.workprec(bits + GUARD):
        for r in range(r_max + 1):
            denom = c.c0 * ball(binomial(k * k, r)) * c.tau**r
            ratio = table.get(k, r).value / denom
            ok = bool(ratio.contains(1)) if r <= 1 else None
            rows.append(RatioRow(k, r, ratio, ok))
    return rows


@dataclass(frozen=True)
class BoundVerdict:
    k: int
    r: int
    verdict: str  # "pass" | "fail" | "indeterminate"
    value: arb
    bound: arb
    equality: bool = False


def check_coefficient_bound(table: CoefficientTable, k: int, bits: int = 256,
                            constants: ArithmeticConstants | None = None) -> list[BoundVerdict]:
    """Three-valued check of |c_r(k)| <= c_0(k) C(k^2, r) tau_k^r per stored r.

    For r = 0, 1 the two sides are equal in theory, so overlapping balls count
    as a pass with equality there.
    """
    c = _consts(k, bits, constants)
    out = []
    with ctx.workprec(bits + GUARD):
        for rec in table.rows_for(k):
            bound = c.c0 * ball(binomial(k * k, rec.r)) * c.tau**rec.r
            val = abs(rec.value)
            if rec.r <= 1 and val.overlaps(bound):
                out.append(BoundVerdict(k, rec.r, "pass", rec.value, bound, True))
            elif val.upper() <= bound.lower():
                out.append(BoundVerdict(k, rec.r, "pass", rec.value, bound))
            elif val.lower() > bound.upper():
                out.append(BoundVerdict(k, rec.r, "fail", rec.value, bound))
            else:
                out.append(BoundVerdict(k, rec.r, "indeterminate", rec.value, bound))
    return out


def polynomial_bound_check(table: CoefficientTable, k: int, x, bits: int = 256,
                           constants: ArithmeticConstants | None = None) -> tuple[arb, arb, arb, str]:
    """Compare sum |c_r||x|^(k^2-r) with the matching terms of c_0 (|x| + tau)^(k^2).

    Only the stored r contribute to both partial sums.  Returns
    (lhs, partial rhs, full rhs, verdict).
    """
    c = _consts(k, bits, constants)
    n = k * k
    with ctx.workprec(bits + GUARD):
        ax = abs(as_ball(x, bits))
        lhs = arb(0)
        rhs = arb(0)
        for rec in table.rows_for(k):
            pw = ax ** (n - rec.r) if n - rec.r else arb(1)
            lhs += abs(rec.value) * pw
            rhs += c.c0 * ball(binomial(n, rec.r)) * c.tau**rec.r * pw
        full = c.c0 * (ax + c.tau) ** n
    if lhs.upper() <= rhs.lower() and rhs.upper() <= full.lower():
        verdict = "pass"
    elif lhs.lower() > rhs.upper():
        verdict = "fail"
    else:
        # equal partial sums happen when only the exact rows are present
        verdict = "pass" if lhs.overlaps(rhs) and all(r.r <= 1 for r in table.rows_for(k)) else "indeterminate"
    return lhs, rhs, full, verdict


# ---------------------------------------------------------------------------
# integrals of powers of log(t/2 pi)

def _positive_series(U: arb, n: int, prec: int) -> arb:
    """int_0^U u^n e^u du = sum_i U^(n+i+1)/(i! (n+i+1)), any real U of moderate size."""
    absU = abs(U).upper()
    # repeated products: arb's ** goes through log and fails on balls around 0
    term = arb(1)
    for _ in range(n + 1):
        term *= U
    total = arb(0)
    i = 0
    # callers add +-n! to this sum, so n! sets the absolute scale
    scale = ball(factorial(n))
    eps = arb(2) ** (-prec)
    while True:
        total += term / (n + i + 1)
        i += 1
        term = term * U / i
        if i + 1 >= 2 * absU + 2:
            t_next = abs(term / (n + i + 1)).upper()
            if not t_next.is_finite():
                raise ArithmeticError("series for the log-power integral lost all precision")
            if t_next <= (eps * (scale + abs(total))).lower() or t_next == 0:
                # later ratios are at most 1/2, so the rest is below 2 t_next
                return total + arb(0, 2 * t_next)


def _upper_gamma(V: arb, n: int) -> arb:
    """int_V^inf v^n e^-v dv = n! e^-V sum_{j<=n} V^j/j!  for V >= 0."""
    s = arb(0)
    term = arb(1)
    for j in range(n + 1):
        s += term
        term = term * V / (j + 1)
    return ball(factorial(n)) * (-V).exp() * s


def integral_log_power(T, n: int, absolute: bool = False, bits: int = 256) -> arb:
    """int_0^T log(t/2pi)^n dt, or with |log(t/2pi)|^n when ``absolute``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    T = as_ball(T, bits)
    if not T > 0:
        raise ValueError("T must be positive")
    prec = bits + GUARD + 2 * n.bit_length() + 16
    with ctx.workprec(prec):
        two_pi = 2 * arb.pi()
        U = (T / two_pi).log()
        nf = ball(factorial(n))
        sign = 1 if n % 2 == 0 else -1
        if U > 0:
            S = _positive_series(U, n, prec)
            inner = (nf if absolute else sign * nf) + S
        elif U < 0:
            G = _upper_gamma(-U, n)
            inner = G if absolute else sign * G
        else:
            # U straddles 0: both closed forms are continuous there
            S = _positive_series(U, n, prec)
            if absolute:
                lo = _upper_gamma(abs(U).upper(), n)
                hi = nf + _positive_series(arb(abs(U).upper()), n, prec)
                inner = _hull(lo, hi)
            else:
                inner = sign * nf + S
        return two_pi * inner


def _coeff_ball(c) -> arb:
    if isinstance(c, str):
        return ball_from_decimal(c)
    return as_ball(c)


def first_zero_ordinate(bits: int = 256) -> arb:
    """Imaginary part of the first nontrivial zeta zero, 14.1347..."""
    from flint import acb

    with ctx.workprec(bits + GUARD):
        return acb.zeta_zero(1).imag


def p1_coefficients(bits: int = 256) -> list[arb]:
    """[1, 2 gamma]: the moment polynomial for k = 1, top degree first."""
    g = euler_gamma(bits + GUARD)
    with ctx.workprec(bits + GUARD):
        return [arb(1), 2 * g]


def integral_Pk(T, coeffs: Sequence, bits: int = 256, lower=0) -> arb:
    """int_lower^T P(log(t/2pi)) dt for P with coefficients c_0 (top degree) .. c_n.

    The default lower limit is 0; tabulated moment data are often integrated
    from the first zero ordinate instead (see ``first_zero_ordinate``).
    """
    if not coeffs:
        raise ValueError("empty coefficient list")
    n = len(coeffs) - 1
    kk = math.isqrt(n)
    if kk * kk != n:
        raise ValueError(f"{len(coeffs)} coefficients is not k^2 + 1 for any k")
    with ctx.workprec(bits + GUARD):
        total = arb(0)
        lo = as_ball(lower, bits)
        for r, c in enumerate(coeffs):
            piece = integral_log_power(T, n - r, False, bits)
            if lo != 0:
                piece -= integral_log_power(lo, n - r, False, bits)
            total += _coeff_ball(c) * piece
    return total


def integral_bound(T, k: int, bits: int = 256, constants: ArithmeticConstants | None = None) -> arb:
    """c_0(k) int_0^T (|log(t/2pi)| + tau_k)^(k^2) dt by exact binomial expansion."""
    if k < 1:
        raise ValueError("k must be positive")
    c = _consts(k, bits, constants)
    n = k * k
    with ctx.workprec(bits + GUARD):
        total = arb(0)
        for r in range(n + 1):
            total += ball(binomial(n, r)) * c.tau ** (n - r) * integral_log_power(T, r, True, bits)
        return c.c0 * total


def leading_term(T, k: int, bits: int = 256, constants: ArithmeticConstants | None = None) -> arb:
    """c_0(k) T (log T)^(k^2)."""
    T = as_ball(T, bits)
    if not T > 1:
        raise ValueError("T must exceed 1")
    c = _consts(k, bits, constants)
    with ctx.workprec(bits + GUARD):
        return c.c0 * T * T.log() ** (k * k)


# ---------------------------------------------------------------------------
# maximal size on [0, T]

@dataclass(frozen=True)
class MTReport:
    T: arb
    k_opt: int
    k: int
    bound: arb
    envelope: arb
    terms: dict = field(default_factory=dict)
    unit_constants: tuple[str, ...] = ("C", "C_2")


def mT_bound(T, bits: int = 256, k: int | None = None) -> MTReport:
    """Bound on max |zeta(1/2+it)| over [0, T] from the 2k-th moment bound.

    bound = 2 (c_0 T log T)^(1/2k) (integral_bound / (c_0 T))^(1/2k) with the
    unspecified absolute constants set to 1.
    """
    T = as_ball(T, bits)
    with ctx.workprec(bits + GUARD):
        L = T.log()
        if not L.log() > 0:
            raise ValueError("T too small: need log log T > 0")
        LL = L.log()
        k_opt = int(round(float((2 * L / LL).sqrt().mid())))
        k_opt = max(k_opt, 1)
        ku = k if k is not None else k_opt
        c = constants_for(ku, bits)
        ib = integral_bound(T, ku, bits, c)
        e = arb(1) / (2 * ku)
        first = (c.c0 * T * L) ** e
        second = (ib / (c.c0 * T)) ** e
        bound = 2 * first * second
        envelope = ((L * LL) / 2).sqrt().exp()
    terms = {"c0": c.c0, "integral_bound": ib, "first_factor": first, "second_factor": second,
             "log_T": L, "log_log_T": LL}
    return MTReport(T, k_opt, ku, bound, envelope, terms)


def unitary_c_r(k: int, r: int) -> Fraction:
    """k^r C(k^2, r) g_k / (k^2)!, the random-matrix analogue of c_r(k)."""
    if not 0 <= r <= k * k:
        raise ValueError(f"r={r} outside 0..{k * k}")
    return Fraction(k) ** r * binomial(k * k, r) * compute_g(k) / factorial(k * k)


# ---------------------------------------------------------------------------
# numerical cross-check

def quad_crosscheck(T, k: int, coeffs: Sequence | None = None, mode: str = "Pk",
                    dps: int = 40, constants: ArithmeticConstants | None = None) -> arb:
    """The same integrals by tanh-sinh quadrature.

    ``mode`` is "Pk" (needs ``coeffs``), "bound", or "constant" (integrand 1).
    The radius is the quadrature's own error estimate plus a few ulps, an
    estimate rather than a certificate.
    """
    import mpmath

    T = as_ball(T)
    with mpmath.workdps(dps):
        Tm = mpmath.mpf(T.mid().str(dps + 10, radius=False))
        two_pi = 2 * mpmath.pi
        if mode == "Pk":
            if coeffs is None:
                raise ValueError("Pk mode needs coefficients")
            cs = [mpmath.mpf(_coeff_ball(c).mid().str(dps + 10, radius=False)) for c in coeffs]
            n = len(cs) - 1

            def f(t):
                u = mpmath.log(t / two_pi)
                return mpmath.polyval(cs, u)

        elif mode == "bound":
            c = _consts(k, max(128, int(dps * 3.4) + 32), constants)
            c0 = mpmath.mpf(c.c0.mid().str(dps + 10, radius=False))
            tau = mpmath.mpf(c.tau.mid().str(dps + 10, radius=False))
            n = k * k

            def f(t):
                return c0 * (abs(mpmath.log(t / two_pi)) + tau) ** n

        elif mode == "constant":
            def f(t):
                return mpmath.mpf(1)

        else:
            raise ValueError(f"unknown mode {mode!r}")
        pts = [mpmath.mpf(0)]
        edge = two_pi
        while edge < Tm:
            pts.append(edge)
            edge *= 10
        pts.append(Tm)
        val, err = mpmath.quad(f, pts, method="tanh-sinh", error=True, maxdegree=10)
        slack = abs(val) * mpmath.mpf(10) ** (-(dps - 5))
        rad = err + slack
        if not mpmath.isfinite(val) or rad > abs(val) * mpmath.mpf(10) ** (-12):
            raise ArithmeticError("quadrature did not converge to the requested level")
        with ctx.workprec(int(dps * 3.4) + 32):
            return arb(mpmath.nstr(val, dps + 5)) + arb(0, arb(mpmath.nstr(rad, 10)))
