import pytest

from dcs.exactnum import ModelParams
from dcs.partition import enumerate_admissible, identity_window, partition_count
from dcs.qseries import (QSeries, character_table, count_audit, inverse_qpochhammer,
                         lhs_series, partition_series, rhs_series)


def test_partition_series_counts_partitions():
    s = partition_series(1, 30)
    assert s.coeffs == [partition_count(k) for k in range(31)]


def test_partition_series_respects_grading_unit():
    s = partition_series(4, 20)
    assert s.nonzero_terms() == [(0, 1), (4, 1), (8, 2), (12, 3), (16, 5), (20, 7)]


def test_finite_pochhammer_counts_bounded_parts():
    # 1/((1-q)(1-q^2)): partitions into parts <= 2, i.e. floor(k/2) + 1
    s = inverse_qpochhammer(2, 1, 12)
    assert s.coeffs == [k // 2 + 1 for k in range(13)]


def test_series_algebra():
    a = QSeries.monomial(2, 10, 3, 5)
    b = QSeries.monomial(2, 10, 4, 2)
    assert (a * b).nonzero_terms() == [(7, 10)]
    assert (a + b).shift(2).nonzero_terms() == [(5, 5), (6, 2)]
    assert (a * QSeries.monomial(2, 10, 8)).nonzero_terms() == []
    with pytest.raises(ValueError):
        a + QSeries.zero(3, 10)


def test_bosonic_side_free_fermion_values():
    # (1,1): sum_Q q^(Q^2/2) / (q)_inf in units q^(1/2)
    lhs = lhs_series(ModelParams(1, 1), 8)
    assert lhs.coeffs == [1, 2, 1, 2, 4, 4, 5, 6, 9]


def test_identity_holds_for_free_fermions():
    p = ModelParams(1, 1)
    cap = 24 * 2
    assert lhs_series(p, cap) == rhs_series(p, cap)
    assert all(row[3] for row in character_table(p, 24))


@pytest.mark.parametrize("rs", [(1, 1), (2, 1), (3, 2), (1, 3)])
def test_fermionic_side_counts_labels(rs):
    p = ModelParams(*rs)
    rep = count_audit(p, 5 * 2 * p.disc)
    assert rep["definitional_ok"], rep


def test_count_audit_negative_control():
    p = ModelParams(2, 1)
    cap = 40
    labels = enumerate_admissible(p, cap, identity_window(p))
    rep = count_audit(p, cap, labels=labels[:-1])
    assert not rep["definitional_ok"]


def test_first_mismatch_for_r_not_equal_s_is_reported():
    rep = count_audit(ModelParams(2, 1), 24)
    assert rep["identity_ok"] is False
    assert rep["identity_mismatch_detail"]["exponent"] == 0


def test_character_table_rows():
    rows = character_table(ModelParams(1, 1), 2)
    assert rows[:3] == [(0, 1, 1, True), (1, 2, 2, True), (2, 1, 1, True)]
    assert len(rows) == 5
