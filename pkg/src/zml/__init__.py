"""Coefficients of moment polynomials of the Riemann zeta function.

Exact rational combinatorics for the residue ratios, certified ball
arithmetic for the arithmetic constants, and the integral and bound checks
built on top of them.
"""

from .ball import BallValue, PrecisionError, ball, ball_from_decimal, format_ball
from .constants import ArithmeticConstants, compute_g, constants_for, hyp2f1
from .exact import ExactRational, KPolynomial, TruncatedSeries, poly_interpolate
from .moments import (
    CoefficientTable,
    MissingDataError,
    OutsideProvenRangeWarning,
    c_r_asymptotic,
    check_coefficient_bound,
    integral_bound,
    integral_Pk,
    leading_term,
    mT_bound,
    ratio_table,
)
from .nk import nk_bound_check, nk_polynomial, nk_ratio
from .oracle import nk_oracle, p_oracle
from .primes import euler_gamma, prime_zeta, primes_up_to, zeta_int, zeta_log_deriv
from .symmetrize import SymmetrizedForm, p_of_alpha, symmetrize
from .tuples import FullTuple, HalfTuple, parse_tuple

__version__ = "0.1.0"

__all__ = [
    "ArithmeticConstants", "BallValue", "CoefficientTable", "ExactRational", "FullTuple",
    "HalfTuple", "KPolynomial", "MissingDataError", "OutsideProvenRangeWarning",
    "PrecisionError", "SymmetrizedForm", "TruncatedSeries", "ball", "ball_from_decimal",
    "c_r_asymptotic", "check_coefficient_bound", "compute_g", "constants_for", "euler_gamma",
    "format_ball", "hyp2f1", "integral_bound", "integral_Pk", "leading_term", "mT_bound",
    "nk_bound_check", "nk_oracle", "nk_polynomial", "nk_ratio", "p_of_alpha", "p_oracle",
    "parse_tuple", "poly_interpolate", "prime_zeta", "primes_up_to", "ratio_table",
    "symmetrize", "zeta_int", "zeta_log_deriv",
]
