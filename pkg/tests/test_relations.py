import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftconv.forms import delta_form
from shiftconv.relations import (
    SupportedSeq,
    bareiss,
    bareiss_determinant,
    bareiss_rank,
    node_expansion_residual,
    only_zero_solution,
    pm_relation_reduction,
    power_sums,
    theorem_bar_demo,
    vandermonde_det,
    vandermonde_product,
)
from shiftconv.shifted import shifted_products


def det_leibniz(M):
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        p = 1
        for i in range(n):
            p *= M[i][perm[i]]
        total += (-1) ** inv * p
    return total


@given(st.lists(st.lists(st.integers(-20, 20), min_size=4, max_size=4), min_size=4, max_size=4))
@settings(max_examples=80)
def test_bareiss_matches_leibniz(M):
    assert bareiss_determinant(M) == det_leibniz(M)


def test_bareiss_rank_and_zero_rows():
    assert bareiss_rank([[1, 2, 3], [2, 4, 6], [0, 0, 1]]) == 2
    assert bareiss_determinant([[0, 1], [1, 0]]) == -1
    assert bareiss_determinant([]) == 1
    _, rank, _ = bareiss([[0, 0], [0, 0]])
    assert rank == 0
    with pytest.raises(ValueError):
        bareiss_determinant([[1, 2]])


def test_vandermonde_small():
    # nodes 9 and 25
    assert vandermonde_det([1, 2], 1) == 16 == vandermonde_product([1, 2], 1)
    with pytest.raises(ValueError):
        vandermonde_det([1, 1], 1)


def test_vandermonde_det_equals_product():
    rng = random.Random(1)
    for _ in range(20):
        nodes = rng.sample(range(1, 60), rng.randint(1, 9))
        r = rng.randint(1, 10)
        assert vandermonde_det(nodes, r) == vandermonde_product(nodes, r)


def test_only_zero_solution():
    assert all(only_zero_solution(n, r) for n in range(1, 9) for r in range(1, 6))


def test_power_sums():
    c = SupportedSeq(1, {1: 2, 2: -1})
    # nodes 3, 5
    assert power_sums(c, 2) == [1, 2 * 9 - 25, 2 * 81 - 625]


def test_supported_seq_drops_zeros_and_validates():
    c = SupportedSeq(2, [(3, 0), (1, Fraction(1, 2))])
    assert c.entries == {1: Fraction(1, 2)} and len(c) == 1
    with pytest.raises(ValueError):
        SupportedSeq(0, {1: 1})
    with pytest.raises(ValueError):
        SupportedSeq(1, [(1, 1), (1, 2)])
    seq = shifted_products(delta_form(10), 1, 5)
    assert SupportedSeq.from_shifted(seq).entries[2] == -6048


def test_node_expansion_and_reduction_exact():
    assert all(node_expansion_residual(m, k, r, n) == 0
               for m in (0, 1, 4) for k in (12, 17) for r in (1, 3) for n in (1, 7))
    rng = random.Random(9)
    for _ in range(10):
        r = rng.randint(1, 6)
        c = SupportedSeq(r, {n: Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                             for n in rng.sample(range(1, 30), 4)})
        assert pm_relation_reduction(c, rng.randint(0, 6), rng.randint(4, 26)) == 0


def test_theorem_bar_demo():
    v = theorem_bar_demo(SupportedSeq(1, {1: 1, 2: -1}))
    assert v.consistent_only_with_zero and v.witness_nu == 1
    v = theorem_bar_demo(SupportedSeq(1, {}))
    assert v.consistent_only_with_zero and v.witness_nu is None
    v = theorem_bar_demo(SupportedSeq(3, {4: 7}))
    assert v.witness_nu == 0


def test_witness_for_sequence_killing_early_sums():
    # choose c on nodes x = 9, 25, 49 with S_0 = S_1 = 0: c = (x3 - x2, x1 - x3, x2 - x1)
    c = SupportedSeq(1, {1: 49 - 25, 2: 9 - 49, 3: 25 - 9})
    assert power_sums(c, 1) == [0, 0]
    assert theorem_bar_demo(c).witness_nu == 2
