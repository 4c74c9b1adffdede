"""Command-line entry point ``zml``.

Exit codes: 0 success, 1 verification failure, 2 precision or resource
failure, 64 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings
from dataclasses import dataclass
from typing import Sequence

from flint import arb

from .ball import PrecisionError, certified_digits, format_ball
from .constants import DEFAULT_BITS, DEFAULT_CUTOFF, DEFAULT_TAIL_ORDER, constants_for
from .moments import (
    CoefficientTable,
    MissingDataError,
    OutsideProvenRangeWarning,
    check_coefficient_bound,
    first_zero_ordinate,
    integral_bound,
    integral_Pk,
    leading_term,
    mT_bound,
    p1_coefficients,
    ratio_table,
)
from .nk import nk_polynomial, nk_ratio
from .oracle import nk_oracle, p_oracle
from .symmetrize import p_of_alpha, symmetrize
from .tuples import FullTuple, HalfTuple, parse_tuple
from . import verify as _verify

EXIT_OK, EXIT_VERIFY, EXIT_PRECISION, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    bits: int = DEFAULT_BITS
    cutoff: int = DEFAULT_CUTOFF
    tail_order: int = DEFAULT_TAIL_ORDER
    fmt: str = "csv"
    show_error: bool = False
    digits: int | None = None
    oracle_max_k: int = 3

    def __post_init__(self):
        if self.bits < 64:
            raise UsageError("--precision-bits must be at least 64")
        if self.cutoff < 1000:
            raise UsageError("--prime-cutoff must be at least 1000")
        if self.tail_order < 4:
            raise UsageError("--tail-order must be at least 4")
        if self.fmt not in ("csv", "json"):
            raise UsageError("--format must be csv or json")

    def constants(self, k: int):
        return constants_for(k, self.bits, self.cutoff, self.tail_order)


# ---------------------------------------------------------------------------
# output

def _cell(value, cfg: RunConfig) -> str | int:
    if isinstance(value, arb):
        return format_ball(value, cfg.digits)
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


def _expand(row: dict, cfg: RunConfig) -> dict:
    out = {}
    for name, value in row.items():
        out[name] = _cell(value, cfg)
        if isinstance(value, arb):
            if cfg.show_error:
                out[name + "_radius"] = value.rad().str(3, radius=False)
    return out


def emit(rows: list[dict], cfg: RunConfig, out=None) -> None:
    out = out or sys.stdout
    rows = [_expand(r, cfg) for r in rows]
    if not rows:
        return
    if cfg.fmt == "json":
        for r in rows:
            out.write(json.dumps(r) + "\n")
        return
    w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


# ---------------------------------------------------------------------------
# argument helpers

def parse_k_range(text: str) -> list[int]:
    """"10", "10,20,30" or "10-50" (inclusive)."""
    ks: list[int] = []
    try:
        for piece in text.split(","):
            piece = piece.strip()
            if "-" in piece[1:]:
                lo, hi = piece.split("-", 1)
                ks.extend(range(int(lo), int(hi) + 1))
            else:
                ks.append(int(piece))
    except ValueError:
        raise UsageError(f"bad --k value {text!r}") from None
    if not ks or any(k < 1 for k in ks):
        raise UsageError("--k values must be positive integers")
    return sorted(set(ks))


def _single_k(args) -> int:
    if args.k is None:
        raise UsageError("--k is required")
    ks = parse_k_range(args.k)
    if len(ks) != 1:
        raise UsageError("this command takes a single --k")
    return ks[0]


def _tuple_arg(args):
    if not args.tuple:
        raise UsageError("--tuple is required")
    try:
        return parse_tuple(args.tuple)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _table(args) -> CoefficientTable:
    if args.input:
        try:
            return CoefficientTable.from_file(args.input)
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    return CoefficientTable.table1()


def _half(k: int, entries) -> HalfTuple:
    try:
        return HalfTuple(k, entries)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _full(k: int, first, second) -> FullTuple:
    try:
        return FullTuple.from_halves(k, first, second or ())
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands

def cmd_constants(args, cfg: RunConfig) -> int:
    rows = []
    for k in parse_k_range(args.k or "1-10"):
        try:
            c = cfg.constants(k)
        except PrecisionError as exc:
            print(f"precision failure at k={k}: {exc}", file=sys.stderr)
            return EXIT_PRECISION
        rows.append({"k": k, "a_k": c.a, "g_k": c.g, "B_k": c.B, "tau_k": c.tau, "c0": c.c0,
                     "c0_digits": certified_digits(c.c0), "tau_digits": certified_digits(c.tau)})
    emit(rows, cfg)
    return EXIT_OK


def cmd_nk(args, cfg: RunConfig) -> int:
    first, second = _tuple_arg(args)
    if second:
        raise UsageError("nk takes a single half tuple")
    if args.k is None:
        poly = nk_polynomial(first)
        emit([{"tuple": ",".join(map(str, first)), "polynomial": str(poly)}], cfg)
    else:
        k = _single_k(args)
        emit([{"k": k, "tuple": ",".join(map(str, first)), "ratio": nk_ratio(k, _half(k, first))}], cfg)
    return EXIT_OK


def cmd_pk(args, cfg: RunConfig) -> int:
    k = _single_k(args)
    first, second = _tuple_arg(args)
    alpha = _full(k, first, second)
    emit([{"k": k, "tuple": args.tuple, "ratio": p_of_alpha(alpha)}], cfg)
    return EXIT_OK


def cmd_symmetrize(args, cfg: RunConfig) -> int:
    k = _single_k(args)
    first, second = _tuple_arg(args)
    form = symmetrize(_full(k, first, second))
    rows = [{"prefactor": form.prefactor, "tuple": ",".join(map(str, t.entries)), "multiplicity": m}
            for t, m in form.terms]
    emit(rows, cfg)
    return EXIT_OK


def cmd_oracle(args, cfg: RunConfig) -> int:
    k = _single_k(args)
    first, second = _tuple_arg(args)
    if second is None:
        if k > max(cfg.oracle_max_k, 5):
            raise UsageError("nk oracle supports k <= 5")
        lam = _half(k, first)
        slow, fast = nk_oracle(k, lam), nk_ratio(k, lam)
    else:
        if k > cfg.oracle_max_k:
            raise UsageError(f"p oracle limited to k <= {cfg.oracle_max_k}")
        alpha = _full(k, first, second)
        slow, fast = p_oracle(k, alpha, allow_large=k == 4), p_of_alpha(alpha)
    emit([{"k": k, "tuple": args.tuple, "oracle": slow, "fast": fast, "agree": slow == fast}], cfg)
    return EXIT_OK if slow == fast else EXIT_VERIFY


def cmd_verify(args, cfg: RunConfig) -> int:
    vcfg = _verify.Config(cfg.bits, cfg.cutoff, cfg.tail_order)
    results = _verify.run_suite(args.suite, vcfg)
    rows = [{"suite": r.suite, "case": r.case, "status": r.status,
             "detail": json.dumps(r.detail, sort_keys=True, default=str)} for r in results]
    emit(rows, cfg)
    failed = sum(r.status == "fail" for r in results)
    warned = sum(r.status == "warn" for r in results)
    print(f"{args.suite}: {len(results) - failed} passed, {failed} failed, {warned} warnings",
          file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


def _ratio_rows(args, cfg: RunConfig):
    k = _single_k(args)
    table = _table(args)
    stored = [rec.r for rec in table.rows_for(k)]
    r_max = args.r_max if args.r_max is not None else (max(stored) if stored else 0)
    return ratio_table(table, k, r_max, cfg.bits, cfg.constants(k))


def cmd_ratios(args, cfg: RunConfig) -> int:
    rows = [{"k": r.k, "r": r.r, "ratio": r.ratio,
             "identity_ok": "" if r.identity_ok is None else r.identity_ok}
            for r in _ratio_rows(args, cfg)]
    emit(rows, cfg)
    return EXIT_OK


def cmd_emit_ratio_plot(args, cfg: RunConfig) -> int:
    rows = _ratio_rows(args, cfg)
    out = sys.stdout
    out.write("r,ratio_mid,ratio_radius\n")
    for r in rows:
        mid = format_ball(r.ratio, cfg.digits or 15)
        out.write(f"{r.r},{mid},{r.ratio.rad().str(3, radius=False)}\n")
    return EXIT_OK


def cmd_bounds(args, cfg: RunConfig) -> int:
    table = _table(args)
    ks = parse_k_range(args.k) if args.k else table.ks()
    rows = []
    for k in ks:
        for v in check_coefficient_bound(table, k, cfg.bits, cfg.constants(k)):
            rows.append({"k": k, "r": v.r, "verdict": v.verdict, "equality": v.equality,
                         "abs_c_r": abs(v.value), "bound": v.bound})
    emit(rows, cfg)
    return EXIT_VERIFY if any(r["verdict"] == "fail" for r in rows) else EXIT_OK


def cmd_integrals(args, cfg: RunConfig) -> int:
    T = args.T
    rows = []
    for k in parse_k_range(args.k or "1-13"):
        c = cfg.constants(k)
        row = {"k": k, "T": T, "leading_term": leading_term(T, k, cfg.bits, c),
               "integral_bound": integral_bound(T, k, cfg.bits, c)}
        if k == 1:
            coeffs = p1_coefficients(cfg.bits)
            row["integral_P1"] = integral_Pk(T, coeffs, cfg.bits)
            row["integral_P1_from_first_zero"] = integral_Pk(T, coeffs, cfg.bits,
                                                             lower=first_zero_ordinate(cfg.bits))
        rows.append(row)
    # columns differ between k=1 and the rest; keep a uniform header
    keys = list(dict.fromkeys(key for r in rows for key in r))
    emit([{key: r.get(key, "") for key in keys} for r in rows], cfg)
    return EXIT_OK


def cmd_mt_bound(args, cfg: RunConfig) -> int:
    k = _single_k(args) if args.k else None
    rep = mT_bound(args.T, cfg.bits, k)
    emit([{"T": args.T, "k_opt": rep.k_opt, "k": rep.k, "bound": rep.bound,
           "envelope": rep.envelope, "unit_constants": "+".join(rep.unit_constants)}], cfg)
    return EXIT_OK


COMMANDS = {
    "constants": cmd_constants,
    "nk": cmd_nk,
    "pk": cmd_pk,
    "symmetrize": cmd_symmetrize,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "ratios": cmd_ratios,
    "bounds": cmd_bounds,
    "integrals": cmd_integrals,
    "mt-bound": cmd_mt_bound,
    "emit-ratio-plot": cmd_emit_ratio_plot,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=DEFAULT_BITS)
    common.add_argument("--prime-cutoff", type=float, default=DEFAULT_CUTOFF)
    common.add_argument("--tail-order", type=int, default=DEFAULT_TAIL_ORDER)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--show-error", action="store_true", help="add a radius column per value")
    common.add_argument("--digits", type=int, help="override the certified digit count")

    p = _Parser(prog="zml", description="Moment-polynomial coefficients and arithmetic constants.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, *, k=True, tup=False, table=False, T=None):
        s = sub.add_parser(name, help=help_, parents=[common])
        if k:
            s.add_argument("--k", help="single k, list 10,20 or range 10-50")
        if tup:
            s.add_argument("--tuple", help="comma-separated entries, ';' between halves")
        if table:
            s.add_argument("--input", help="coefficient file (JSON lines or k,r,c CSV)")
            s.add_argument("--r-max", type=int)
        if T is not None:
            s.add_argument("--T", default=T, help="height, as a decimal string")
        return s

    add("constants", "arithmetic constants a_k, g_k, B_k, tau_k, c_0(k)")
    add("nk", "N_k^0 ratio, or its polynomial in k when --k is omitted", tup=True)
    add("pk", "p_k(alpha)/p_k(0) via symmetrization", tup=True)
    add("symmetrize", "list the first-half tuples a two-half tuple reduces to", tup=True)
    add("oracle", "compare brute-force residues with the fast recursion", tup=True)
    v = add("verify", "run a verification suite", k=False)
    v.add_argument("suite", choices=sorted(_verify.SUITES))
    add("ratios", "c_r(k) over its asymptotic size", table=True)
    add("bounds", "check |c_r(k)| <= c_0(k) C(k^2,r) tau_k^r on stored rows", table=True)
    add("integrals", "leading term and integrated bound at height T", T="100000000.643")
    add("mt-bound", "bound on the maximum of |zeta| on the critical line up to T", T="100000000.643")
    add("emit-ratio-plot", "CSV of r, ratio midpoint and radius", table=True)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cutoff = int(args.prime_cutoff)
        if cutoff != args.prime_cutoff:
            raise UsageError("--prime-cutoff must be an integer")
        cfg = RunConfig(args.precision_bits, cutoff, args.tail_order, args.format,
                        args.show_error, args.digits)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", OutsideProvenRangeWarning)
            return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"zml: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MissingDataError as exc:
        print(f"zml: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"zml: precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ValueError as exc:
        print(f"zml: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
