from math import factorial

import pytest
from hypothesis import given, strategies as st

from dcs.exactnum import ModelParams
from dcs.partition import (NotInFatHook, SpectralLabel, admissible_window, as_partition,
                           cell_exponent, conjugate, dominates, enumerate_admissible,
                           identity_window, in_fat_hook, is_bijection_vector,
                           label_exponent, labels_in_sector, lambda_to_n, n_to_lambda,
                           partition_count, partitions, preceq, tail_sums, z_lambda)

partitions_st = st.lists(st.integers(1, 6), max_size=6).map(as_partition)
vectors = st.lists(st.integers(-3, 5), min_size=3, max_size=3).map(tuple)


def test_partition_counts():
    assert [partition_count(n) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_partition_order_is_reverse_lexicographic():
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))


@given(partitions_st)
def test_conjugate_is_an_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


@given(partitions_st)
def test_conjugation_reverses_dominance_against_single_row(lam):
    d = sum(lam)
    assert dominates((d,) if d else (), lam)
    assert dominates(conjugate(lam), (1,) * d)


@pytest.mark.parametrize("n", range(1, 8))
def test_class_sizes_sum_to_group_order(n):
    assert sum(factorial(n) // z_lambda(lam) for lam in partitions(n)) == factorial(n)


def test_z_lambda_values():
    assert z_lambda((2, 1, 1)) == 4
    assert z_lambda(()) == 1


@given(partitions_st, st.integers(0, 3), st.integers(0, 3))
def test_bijection_round_trip(lam, N, M):
    if not in_fat_hook(lam, N, M):
        with pytest.raises(NotInFatHook):
            lambda_to_n(lam, N, M)
        return
    n = lambda_to_n(lam, N, M)
    assert len(n) == N + M
    assert is_bijection_vector(n, N, M)
    assert n_to_lambda(n, N, M) == lam
    assert sum(n) == sum(lam)


def test_bijection_examples():
    assert lambda_to_n((3, 2, 2, 1), 1, 2) == (3, 3, 2)
    assert n_to_lambda((3, 3, 2), 1, 2) == (3, 2, 2, 1)
    with pytest.raises(ValueError):
        n_to_lambda((1, 0, 2), 1, 2)


@given(vectors, vectors, vectors)
def test_preceq_is_a_partial_order(a, b, c):
    assert preceq(a, a)
    if preceq(a, b) and preceq(b, a):
        assert a == b
    if preceq(a, b) and preceq(b, c):
        assert preceq(a, c)


def test_tail_sums():
    assert tail_sums((1, 2, 3)) == (6, 5, 3)


def test_admissibility_conditions():
    p = ModelParams(2, 1)
    lo, hi = admissible_window(p)
    assert (lo, hi) == (-1, -1)
    assert SpectralLabel(1, 1, -1, (1, 0)).is_admissible(p)
    assert not SpectralLabel(1, 1, 0, (1, 0)).is_admissible(p)
    assert not SpectralLabel(1, 1, -1, (0, 0)).is_admissible(p)
    assert not SpectralLabel(2, 0, -1, (1, 2)).is_admissible(p)
    q = ModelParams(1, 2)
    assert SpectralLabel(1, 0, 1, (1,)).is_admissible(q)
    assert not SpectralLabel(1, 0, 1, (0,)).is_admissible(q)


def test_label_json_round_trip():
    lab = SpectralLabel(2, 1, -1, (3, 2, 0))
    assert SpectralLabel.from_json(lab.to_json()) == lab
    with pytest.raises(ValueError):
        SpectralLabel(2, 1, 0, (1, 1))


def test_enumeration_respects_weight_and_admissibility(params):
    p = params
    cap = 4 * p.disc + 9
    labels = enumerate_admissible(p, cap)
    assert len(labels) == len(set(labels))
    assert all(lab.is_admissible(p) and label_exponent(lab, p) <= cap for lab in labels)
    weights = [label_exponent(lab, p) for lab in labels]
    assert weights == sorted(weights)


def test_cell_exponent_is_the_lowest_label_in_its_cell(params):
    p = params
    window = identity_window(p)
    labels = enumerate_admissible(p, 6 * p.disc, window)
    lowest = {}
    for lab in labels:
        key = (lab.Q, lab.N, lab.M)
        lowest[key] = min(lowest.get(key, 10 ** 9), label_exponent(lab, p))
    for (Q, N, M), e in lowest.items():
        assert cell_exponent(Q, N, M, p) == e


def test_labels_in_sector_land_in_the_sector():
    p = ModelParams(3, 2)
    for lab in labels_in_sector(p, 1, 3):
        assert lab.final_charge(p) == 1 and lab.degree == 3
