"""The first-half residue N_k^0(lambda), as a ratio to N_k^0(0).

Lowering the largest entry lambda_1 = l + 1 by one gives the recursion

    [l+1] = (2k - l - 1)[l]
            - 2 sum_j ( delta_j [l - D_j, lambda_j + D_j]
                        + sum_{i=0}^{D_j} [l - i, lambda_j + i] )

with D_j = floor((l - lambda_j)/2) and delta_j = -1/2 when l - lambda_j is
even, 0 otherwise.  Brackets denote the tuple with entry 1 and entry j
replaced.  All k - m zero slots behave identically and are handled once with
multiplicity k - m, which keeps the cost independent of k.
"""

from __future__ import annotations

import math
import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from flint import arb, ctx

from .exact import KPolynomial, poly_interpolate
from .tuples import HalfTuple, canonical

__all__ = [
    "NkCache",
    "DEFAULT_CACHE",
    "nk_ratio",
    "nk_ratio_raw",
    "expand_step",
    "nk_polynomial",
    "BoundReport",
    "nk_bound_check",
    "partitions",
]


class NkCache:
    """(k, canonical tuple) -> ratio; concurrent reads, serialized writes."""

    def __init__(self):
        self._data: dict[tuple[int, tuple[int, ...]], Fraction] = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value: Fraction):
        with self._lock:
            self._data.setdefault(key, value)

    def __len__(self):
        return len(self._data)

    def clear(self):
        with self._lock:
            self._data.clear()


DEFAULT_CACHE = NkCache()


def _replace(lam: tuple[int, ...], j: int, a: int, b: int) -> tuple[int, ...]:
    """Tuple with entry 0 set to a and entry j (j >= 1, or None for a zero slot) set to b."""
    rest = list(lam[1:])
    if j is None:
        rest.append(b)
    else:
        rest[j - 1] = b
    return canonical([a] + rest)


def expand_step(k: int, lam: tuple[int, ...]) -> list[tuple[Fraction, tuple[int, ...]]]:
    """One application of the recursion to a canonical tuple of positive weight.

    Returns (coefficient, canonical child) pairs; every child has weight one less.
    """
    l = lam[0] - 1
    terms: Counter = Counter()
    terms[canonical((l,) + lam[1:])] += 2 * k - l - 1

    # group equal partners: nonzero entries by value, zero slots as one group
    groups: dict[int, tuple[int | None, int]] = {}
    for j, v in enumerate(lam[1:], start=1):
        if v in groups:
            groups[v] = (groups[v][0], groups[v][1] + 1)
        else:
            groups[v] = (j, 1)
    zeros = k - len(lam)
    if zeros:
        groups[0] = (None, zeros)

    for v, (j, mult) in groups.items():
        diff = l - v
        if diff < 0:
            continue  # D_j = -1 and delta_j = 0: no contribution
        D = diff // 2
        if diff % 2 == 0:
            terms[_replace(lam, j, l - D, v + D)] += Fraction(mult)  # -2 * (-1/2) * mult
        for i in range(D + 1):
            terms[_replace(lam, j, l - i, v + i)] -= 2 * mult
    return [(Fraction(c), t) for t, c in terms.items() if c]


def _trivial(k: int, lam: tuple[int, ...]) -> Fraction | None:
    if not lam:
        return Fraction(1)
    if lam[0] >= 2 * k:
        return Fraction(0)
    return None


def nk_ratio_raw(k: int, entries: Iterable[int], cache: NkCache | None = None,
                 debug: bool = False) -> Fraction:
    """nk_ratio for a plain, possibly unsorted, sequence of entries."""
    return nk_ratio(k, HalfTuple(k, tuple(entries)), cache=cache, debug=debug)


def nk_ratio(k: int, lam: HalfTuple, cache: NkCache | None = None, debug: bool = False) -> Fraction:
    """N_k^0(lambda) / N_k^0(0) exactly.

    Entries of size 2k or more give 0.  With ``debug`` every expansion is
    checked to lower the weight by exactly one.
    """
    if k < 2:
        raise ValueError("the recursion needs k >= 2")
    if not isinstance(lam, HalfTuple):
        lam = HalfTuple(k, tuple(lam))
    if lam.k != k:
        lam = HalfTuple(k, lam.entries)
    cache = DEFAULT_CACHE if cache is None else cache
    root = lam.entries
    hit = _trivial(k, root)
    if hit is not None:
        return hit
    hit = cache.get((k, root))
    if hit is not None:
        return hit

    stack = [root]
    expansions: dict[tuple[int, ...], list] = {}
    while stack:
        cur = stack[-1]
        if cache.get((k, cur)) is not None:
            stack.pop()
            continue
        terms = expansions.get(cur)
        if terms is None:
            terms = expand_step(k, cur)
            if debug:
                w = sum(cur)
                for _, child in terms:
                    assert sum(child) == w - 1, (cur, child)
            expansions[cur] = terms
        pending = []
        total = Fraction(0)
        for coef, child in terms:
            val = _trivial(k, child)
            if val is None:
                val = cache.get((k, child))
            if val is None:
                pending.append(child)
            elif not pending:
                total += coef * val
        if pending:
            stack.extend(pending)
            continue
        cache.put((k, cur), total)
        del expansions[cur]
        stack.pop()
    return cache.get((k, root))


def nk_polynomial(pattern: Iterable[int], cache: NkCache | None = None,
                  held_out: int = 2) -> KPolynomial:
    """The polynomial in k agreeing with nk_ratio(k, pattern) for all k >= m.

    Interpolates at w + 1 consecutive nodes starting at max(m, 2) and confirms
    the result at ``held_out`` further values of k.
    """
    ent = canonical(pattern)
    m, w = len(ent), sum(ent)
    k0 = max(m, 2)
    pts = [(k, nk_ratio(k, HalfTuple(k, ent), cache)) for k in range(k0, k0 + w + 1)]
    poly = poly_interpolate(pts)
    for k in range(k0 + w + 1, k0 + w + 1 + held_out):
        got = nk_ratio(k, HalfTuple(k, ent), cache)
        if poly(k) != got:
            raise ArithmeticError(
                f"interpolated polynomial for {ent} fails at k={k}: {poly(k)} != {got}"
            )
    return poly


@dataclass(frozen=True)
class BoundReport:
    k: int
    entries: tuple[int, ...]
    lhs: Fraction
    rhs: arb
    passed: bool


def nk_bound_check(k: int, lam: HalfTuple, bits: int = 128) -> BoundReport:
    """|ratio| <= 16^w (log(w+10))^w k^w / (lambda_1 ... lambda_m), needs w < k."""
    if not isinstance(lam, HalfTuple):
        lam = HalfTuple(k, tuple(lam))
    w = lam.weight
    if w >= k:
        raise ValueError("bound applies only when |lambda| < k")
    lhs = abs(nk_ratio(k, lam))
    with ctx.workprec(bits):
        rhs = arb(16 * k) ** w * arb(w + 10).log() ** w / math.prod(lam.entries)
        # compare against the lower end of the right side: outward-safe
        passed = arb(lhs.numerator) / lhs.denominator <= rhs.lower() if lhs else True
    return BoundReport(k, lam.entries, lhs, rhs, bool(passed))


def partitions(n: int, max_part: int | None = None, max_len: int | None = None):
    """Partitions of n as descending tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first, None if max_len is None else max_len - 1):
            yield (first,) + rest
