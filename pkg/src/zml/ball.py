"""Ball (midpoint-radius) values backed by FLINT's arb type.

Everything analytic in the package is an ``arb``.  This module only adds the
glue the rest of the code needs: exact conversions from rationals and decimal
strings, exact relative-error queries, and formatting.
"""

from __future__ import annotations

import math
import re
from contextlib import contextmanager
from fractions import Fraction

from flint import arb, ctx, fmpq, fmpz

BallValue = arb

__all__ = [
    "BallValue",
    "PrecisionError",
    "working_precision",
    "ball",
    "ball_from_decimal",
    "dyadic_to_fraction",
    "midpoint_fraction",
    "radius_fraction",
    "relative_radius",
    "accuracy_bits",
    "certified_digits",
    "format_ball",
    "upper_bound",
]


class PrecisionError(ArithmeticError):
    """The requested accuracy could not be certified with the given budget."""


@contextmanager
def working_precision(bits: int):
    with ctx.workprec(int(bits)):
        yield


def ball(x, rad=None) -> arb:
    """Ball around an int, Fraction or arb, optionally widened by ``rad``."""
    if isinstance(x, arb):
        b = x
    elif isinstance(x, Fraction):
        b = arb(fmpq(x.numerator, x.denominator))
    elif isinstance(x, int):
        b = arb(fmpz(x))
    elif isinstance(x, str):
        b = arb(x)
    else:
        raise TypeError(f"cannot make a ball from {type(x).__name__}")
    if rad is not None:
        b = b + arb(0, rad if isinstance(rad, arb) else ball(rad))
    return b


_DECIMAL = re.compile(r"^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$")


def ball_from_decimal(text: str) -> arb:
    """Parse a printed decimal into a ball of radius half a unit in the last digit.

    The midpoint is the exact value of the string, so e.g. ``"3.548884925e-148"``
    becomes a ball of relative width about 1.4e-10.
    """
    m = _DECIMAL.match(text)
    if not m or not (m.group(2) or m.group(3)):
        raise ValueError(f"not a decimal number: {text!r}")
    frac_digits = len(m.group(3) or "")
    exponent = int(m.group(4) or 0)
    mid = Fraction(text.strip())
    half_ulp = Fraction(1, 2) * Fraction(10) ** (exponent - frac_digits)
    # enough bits that the midpoint itself is stored essentially exactly
    bits = max(ctx.prec, 64 + 4 * len(text))
    with ctx.workprec(bits):
        return ball(mid) + arb(0, ball(half_ulp))


def dyadic_to_fraction(x: arb) -> Fraction:
    """Exact value of an arb with zero radius (a dyadic number)."""
    man, exp = x.mid().man_exp()
    man, exp = int(man), int(exp)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)


def midpoint_fraction(x: arb) -> Fraction:
    return dyadic_to_fraction(x.mid())


def radius_fraction(x: arb) -> Fraction:
    return dyadic_to_fraction(x.rad())


def relative_radius(x: arb) -> Fraction:
    """radius / |midpoint| computed exactly; infinite midpoint zero gives inf."""
    mid = midpoint_fraction(x)
    rad = radius_fraction(x)
    if mid == 0:
        if rad == 0:
            return Fraction(0)
        raise ZeroDivisionError("relative radius of a ball centred at zero")
    return rad / abs(mid)


def accuracy_bits(x: arb) -> int:
    """Certified relative accuracy in bits (large for exact values)."""
    return int(x.rel_accuracy_bits())


def certified_digits(x: arb) -> int:
    if x.rad() == 0:
        return 10**6
    if x.mid() == 0:
        return 0
    rr = relative_radius(x)
    return max(0, math.floor(-math.log10(float(rr)) if rr > 0 else 10**6))


def upper_bound(x: arb) -> Fraction:
    """Exact upper endpoint mid + rad."""
    return midpoint_fraction(x) + radius_fraction(x)


def format_ball(x: arb, digits: int | None = None, show_error: bool = False) -> str:
    """Scientific notation with only certified digits unless ``digits`` is given."""
    if digits is None:
        digits = certified_digits(x)
    digits = max(1, min(digits, 60))
    if x.mid() == 0:
        text = "0"
    else:
        text = x.mid().str(digits, radius=False)
    if show_error:
        text += " +/- " + x.rad().str(3, radius=False)
    return text
