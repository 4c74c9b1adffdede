"""Verification suites behind ``zml verify``.

Each suite yields :class:`CaseResult` rows.  Table suites treat an
indeterminate comparison as a failure; bound suites count it as a pass and
flag it with a warning.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from flint import arb, ctx

from .ball import ball_from_decimal
from .constants import DEFAULT_BITS, DEFAULT_CUTOFF, DEFAULT_TAIL_ORDER, constants_for
from .exact import KPolynomial
from .fixtures import table1_rows, table2_rows
from .moments import (
    CoefficientTable,
    check_coefficient_bound,
    first_zero_ordinate,
    integral_bound,
    integral_Pk,
    leading_term,
    p1_coefficients,
    ratio_table,
)
from .nk import nk_bound_check, nk_polynomial, nk_ratio, partitions
from .oracle import nk_oracle, p_oracle
from .symmetrize import p_of_alpha
from .tuples import FullTuple, HalfTuple

__all__ = ["CaseResult", "SUITES", "run_suite", "P_FIXTURES", "N_FIXTURES"]


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    status: str  # pass | fail | warn
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Config:
    bits: int = DEFAULT_BITS
    cutoff: int = DEFAULT_CUTOFF
    tail_order: int = DEFAULT_TAIL_ORDER


def _poly(roots, lead) -> KPolynomial:
    return KPolynomial.from_roots(roots, lead)


def _times(*factors: KPolynomial) -> KPolynomial:
    out = KPolynomial((1,))
    for f in factors:
        out = out * f
    return out


K = KPolynomial((0, 1))

# closed forms for p_k(first; second) / p_k(0)
P_FIXTURES: dict[tuple[tuple[int, ...], tuple[int, ...]], KPolynomial] = {
    ((2, 2, 1), (2, 1)): _times(_poly([-2, -1, -1], 6), KPolynomial((-10, 0, 1))),
    ((3, 2, 1), (2,)): _times(_poly([-2, -1], 2), KPolynomial((417, 0, -58, 0, 1))),
    ((2, 2, 2), (2,)): _times(_poly([-2, -1], -72), KPolynomial((-11, 0, 1))),
    ((2, 2, 1), (3,)): _poly([3, 4, -4, -3, -2, -1], 6),
    ((2, 2, 1, 1), (2,)): _times(_poly([-3, -2, -1], -8), KPolynomial((-47, 0, 2))),
}

# closed forms for N_k^0(lambda) / N_k^0(0)
N_FIXTURES: dict[tuple[int, ...], KPolynomial] = {
    (3, 2, 1): _poly([0, 3, -3, -2, -1], -3),
    (2, 2, 2): _poly([0, -2, -1], 24),
    (2, 2, 1, 1): _poly([0, -3, -2, -1], 12),
    (4, 2, 1): _times(_poly([0, -2, -1], -6), KPolynomial((-23, 0, 3))),
}
for _n in range(1, 6):
    N_FIXTURES[(1,) * _n] = _poly([-j for j in range(_n)], 1)


def suite_fixtures(cfg: Config) -> Iterator[CaseResult]:
    for lam, poly in N_FIXTURES.items():
        got = nk_polynomial(lam)
        ok = got == poly and got.is_integral()
        yield CaseResult("fixtures", f"N{lam} polynomial", "pass" if ok else "fail",
                         {"expected": str(poly), "got": str(got)})
        for k in range(5, 13):
            if len(lam) > k:
                continue
            got_k = nk_ratio(k, HalfTuple(k, lam))
            yield CaseResult("fixtures", f"N{lam} k={k}", "pass" if got_k == poly(k) else "fail",
                             {"expected": str(poly(k)), "got": str(got_k)})
    for (first, second), poly in P_FIXTURES.items():
        for k in range(5, 13):
            got = p_of_alpha(FullTuple.from_halves(k, first, second))
            yield CaseResult("fixtures", f"p{first};{second} k={k}", "pass" if got == poly(k) else "fail",
                             {"expected": str(poly(k)), "got": str(got)})


def _oracle_cases(k: int, max_weight: int):
    for ent in itertools.product(range(min(2 * k, max_weight + 1)), repeat=2 * k):
        if sum(ent) <= max_weight:
            yield FullTuple(k, ent)


def suite_oracle(cfg: Config) -> Iterator[CaseResult]:
    for k in (2, 3):
        for alpha in _oracle_cases(k, 5):
            a, b = p_oracle(k, alpha), p_of_alpha(alpha)
            yield CaseResult("oracle", f"p k={k} {alpha.entries}", "pass" if a == b else "fail",
                             {"oracle": str(a), "fast": str(b)})
    for k in (2, 3, 4):
        for w in range(7):
            for lam in partitions(w, 2 * k - 1, k):
                a, b = nk_oracle(k, lam), nk_ratio(k, HalfTuple(k, lam))
                yield CaseResult("oracle", f"N k={k} {lam}", "pass" if a == b else "fail",
                                 {"oracle": str(a), "fast": str(b)})


def suite_bounds(cfg: Config) -> Iterator[CaseResult]:
    table = CoefficientTable.table1()
    for k in table.ks():
        c = constants_for(k, cfg.bits, cfg.cutoff, cfg.tail_order)
        for v in check_coefficient_bound(table, k, cfg.bits, c):
            status = {"pass": "pass", "fail": "fail", "indeterminate": "warn"}[v.verdict]
            yield CaseResult("bounds", f"c_r bound k={k} r={v.r}", status,
                             {"verdict": v.verdict, "equality": v.equality})
    k = 12
    for w in range(1, 7):
        for lam in partitions(w, None, k):
            rep = nk_bound_check(k, HalfTuple(k, lam))
            yield CaseResult("bounds", f"N bound k={k} {lam}", "pass" if rep.passed else "fail",
                             {"lhs": str(rep.lhs)})


def _rel(a: arb, b: arb) -> float:
    with ctx.workprec(128):
        return abs(float(((a - b) / b).mid()))


def suite_table1(cfg: Config, tol: float = 1e-8) -> Iterator[CaseResult]:
    rows = table1_rows()
    table = CoefficientTable.table1()
    for k in table.ks():
        c = constants_for(k, cfg.bits, cfg.cutoff, cfg.tail_order)
        ref0 = ball_from_decimal(next(r.c for r in rows if r.k == k and r.r == 0))
        ref1 = ball_from_decimal(next(r.c for r in rows if r.k == k and r.r == 1))
        e0 = _rel(c.c0, ref0)
        with ctx.workprec(cfg.bits):
            c1 = c.tau * k * k * c.c0
        e1 = _rel(c1, ref1)
        yield CaseResult("table1", f"c0 k={k}", "pass" if e0 <= tol else "fail", {"rel_err": e0})
        yield CaseResult("table1", f"c1 k={k}", "pass" if e1 <= tol else "fail", {"rel_err": e1})
        printed = {r.r: Fraction(r.ratio) for r in rows if r.k == k}
        for row in ratio_table(table, k, max(printed), cfg.bits, c):
            err = abs(float(row.ratio.mid()) - float(printed[row.r]))
            ok = err <= tol and (row.identity_ok is not False)
            yield CaseResult("table1", f"ratio k={k} r={row.r}", "pass" if ok else "fail",
                             {"abs_err": err, "ratio": row.ratio.mid().str(12, radius=False)})


def suite_table2(cfg: Config) -> Iterator[CaseResult]:
    for row in table2_rows():
        k = row.k
        c = constants_for(k, cfg.bits, cfg.cutoff, cfg.tail_order)
        lt = leading_term(row.T, k, cfg.bits, c)
        ib = integral_bound(row.T, k, cfg.bits, c)
        e4 = _rel(lt, ball_from_decimal(row.leading_term))
        e5 = _rel(ib, ball_from_decimal(row.integral_bound))
        yield CaseResult("table2", f"col4 k={k}", "pass" if e4 <= 1e-8 else "fail", {"rel_err": e4})
        yield CaseResult("table2", f"col5 k={k}", "pass" if e5 <= 1e-6 else "fail", {"rel_err": e5})
        if k == 1:
            coeffs = p1_coefficients(cfg.bits)
            lo = first_zero_ordinate(cfg.bits)
            v = integral_Pk(row.T, coeffs, cfg.bits, lower=lo)
            e3 = _rel(v, ball_from_decimal(row.integral_Pk))
            yield CaseResult("table2", "col3 k=1", "pass" if e3 <= 1e-9 else "fail",
                             {"rel_err": e3, "lower_limit": "first zero ordinate"})


SUITES: dict[str, Callable[[Config], Iterator[CaseResult]]] = {
    "oracle": suite_oracle,
    "fixtures": suite_fixtures,
    "bounds": suite_bounds,
    "table1": suite_table1,
    "table2": suite_table2,
}


def run_suite(name: str, cfg: Config | None = None) -> list[CaseResult]:
    if name not in SUITES:
        raise KeyError(name)
    return list(SUITES[name](cfg or Config()))
