"""Reduction of the two-half residue p_k(alpha) to first-half values.

If the second half of alpha has d nonzero entries, removing the last of them
and adding it onto each of the other k + d - 1 live positions in turn gives a
signed average:

    p_k(alpha) = -1/(k - d + 1) * sum_j p_k(alpha^(j)).

Iterating until the second half is empty leaves a multiset of first-half
tuples with prefactor (-1)^d / prod_{j=1}^{d} (k - d + j).  Equal tuples are
merged after every step.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .nk import NkCache, nk_ratio
from .tuples import FullTuple, HalfTuple, canonical

__all__ = ["SymmetrizedForm", "symmetrize", "p_of_alpha"]


@dataclass(frozen=True)
class SymmetrizedForm:
    k: int
    prefactor: Fraction
    terms: tuple[tuple[HalfTuple, int], ...]

    @property
    def cardinality(self) -> int:
        return sum(m for _, m in self.terms)

    def __str__(self):
        body = " + ".join(f"{m}*{t}" for t, m in self.terms)
        return f"{self.prefactor} * [{body}]"


def _step(k: int, first: tuple[int, ...], second: tuple[int, ...]) -> list[tuple[tuple, tuple]]:
    """Images of one reduction step on canonical halves (nonzero entries only).

    The moved entry is the smallest nonzero second-half entry, i.e. the one in
    the last occupied slot once the second half is sorted descending.
    """
    v = second[-1]
    rest = second[:-1]
    out = []
    # first half: each nonzero slot, then the zero slots as a group
    for i in range(len(first)):
        f = list(first)
        f[i] += v
        out.append((canonical(f), rest))
    zeros = k - len(first)
    if zeros:
        out.extend([(canonical(first + (v,)), rest)] * zeros)
    # remaining occupied second-half slots
    for i in range(len(rest)):
        s = list(rest)
        s[i] += v
        out.append((first, canonical(s)))
    return out


def symmetrize(alpha: FullTuple) -> SymmetrizedForm:
    k = alpha.k
    first = canonical(alpha.first)
    second = canonical(alpha.second)
    d = len(second)
    state: Counter = Counter({(first, second): 1})
    for _ in range(d):
        nxt: Counter = Counter()
        for (f, s), mult in state.items():
            for img in _step(k, f, s):
                nxt[img] += mult
        state = nxt
    prefactor = Fraction((-1) ** d, math.prod(k - d + j for j in range(1, d + 1)))
    terms = sorted(
        ((HalfTuple(k, f), m) for (f, s), m in state.items()),
        key=lambda t: (-t[0].weight, t[0].entries),
    )
    return SymmetrizedForm(k, prefactor, tuple(terms))


def p_of_alpha(alpha: FullTuple, cache: NkCache | None = None) -> Fraction:
    """p_k(alpha) / p_k(0) exactly."""
    if alpha.k < 2:
        raise ValueError("the reduction needs k >= 2")
    k = alpha.k
    if any(e >= 2 * k for e in alpha.entries):
        return Fraction(0)
    form = symmetrize(alpha)
    total = Fraction(0)
    for lam, mult in form.terms:
        total += mult * nk_ratio(k, lam, cache)
    return form.prefactor * total
