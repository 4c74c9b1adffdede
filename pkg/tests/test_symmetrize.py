import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zml.nk import partitions
from zml.oracle import p_oracle
from zml.symmetrize import _step, p_of_alpha, symmetrize
from zml.tuples import FullTuple
from zml.verify import P_FIXTURES


@pytest.mark.parametrize("halves", sorted(P_FIXTURES))
def test_fixture_polynomials(halves):
    first, second = halves
    for k in range(5, 13):
        assert p_of_alpha(FullTuple.from_halves(k, first, second)) == P_FIXTURES[halves](k)


def test_empty_second_half_is_plain_nk():
    form = symmetrize(FullTuple.from_halves(6, (3, 1)))
    assert form.prefactor == 1 and form.cardinality == 1


def test_small_reduction_by_hand():
    # p(0,0; 1,0) = -1/2 [N(1,0) + N(0,1)] at k = 2
    form = symmetrize(FullTuple.from_halves(2, (), (1,)))
    assert form.prefactor == Fraction(-1, 2)
    assert [(t.entries, m) for t, m in form.terms] == [((1,), 2)]


def test_out_of_range_entries_vanish():
    assert p_of_alpha(FullTuple.from_halves(3, (6,), (1,))) == 0
    with pytest.raises(ValueError):
        p_of_alpha(FullTuple.from_halves(1, (1,), (1,)))


def test_step_moves_smallest_entry():
    images = _step(3, (2,), (3, 1))
    assert ((3,), (3,)) in images and ((2,), (4,)) in images
    assert len(images) == 3 + 1


half_pairs = st.integers(3, 9).flatmap(
    lambda k: st.tuples(
        st.just(k),
        st.lists(st.integers(0, 4), max_size=k),
        st.lists(st.integers(0, 4), max_size=min(k, 3)),
    )
)


@pytest.mark.property
@given(half_pairs)
def test_weight_conservation_and_termination(case):
    k, first, second = case
    alpha = FullTuple.from_halves(k, first, second)
    d = sum(1 for v in second if v)
    form = symmetrize(alpha)
    assert all(t.weight == alpha.weight for t, _ in form.terms)
    # one step per nonzero second-half entry, each with k + d' - 1 images
    assert form.cardinality == math.prod(k + j - 1 for j in range(1, d + 1))
    assert form.prefactor == Fraction((-1) ** d, math.prod(k - d + j for j in range(1, d + 1)))


@pytest.mark.property
@given(half_pairs, st.randoms())
def test_permutation_invariance(case, rnd):
    k, first, second = case
    f = list(first) + [0] * (k - len(first))
    s = list(second) + [0] * (k - len(second))
    ref = p_of_alpha(FullTuple(k, tuple(f + s)))
    rnd.shuffle(f)
    rnd.shuffle(s)
    assert p_of_alpha(FullTuple(k, tuple(f + s))) == ref


@pytest.mark.property
def test_permutation_invariance_against_oracle():
    rnd = random.Random(7)
    for k in (2, 3):
        for _ in range(40):
            f = [rnd.randint(0, 2) for _ in range(k)]
            s = [rnd.randint(0, 2) for _ in range(k)]
            alpha = FullTuple(k, tuple(f + s))
            assert p_oracle(k, alpha) == p_of_alpha(alpha)


@pytest.mark.property
@pytest.mark.parametrize("k", [2, 3])
def test_swap_relation(k):
    for w in range(6):
        for a in range(w + 1):
            for first in partitions(a, 2 * k - 1, k):
                for second in partitions(w - a, 2 * k - 1, k):
                    alpha = FullTuple.from_halves(k, first, second)
                    assert p_of_alpha(alpha) == (-1) ** w * p_of_alpha(alpha.swapped())


@pytest.mark.property
def test_growth_bound_at_k20():
    k, eta = 20, 48
    for w in range(1, 5):
        bound = eta**w * (k * math.log(w + 10)) ** w
        for a in range(w + 1):
            for first in partitions(a, None, k):
                for second in partitions(w - a, None, k):
                    val = p_of_alpha(FullTuple.from_halves(k, first, second))
                    assert abs(val) <= bound
