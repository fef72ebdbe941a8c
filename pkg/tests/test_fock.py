import json
from fractions import Fraction

import pytest

from dcs.exactnum import ModelParams
from dcs.fock import (FockVector, apply_a, apply_C, apply_cubic, apply_cubic_literal, apply_H,
                      apply_H_dual_invariant, apply_number, apply_W, inner, matrix_rank,
                      sector_matrix, vertex_mode, vertex_mode_charge)
from dcs.partition import partitions


def basis_states(p, Q, dmax):
    return [FockVector.basis(p, Q, lam) for d in range(dmax + 1) for lam in partitions(d)]


def test_heisenberg_commutator():
    p = ModelParams(2, 1)
    for v in basis_states(p, 1, 4):
        for n in range(-3, 4):
            for m in range(-3, 4):
                if n == 0 or m == 0:
                    continue
                comm = apply_a(n, apply_a(m, v)) - apply_a(m, apply_a(n, v))
                assert comm == (v.scale(n) if n + m == 0 else FockVector(p))


def test_creation_is_adjoint_to_annihilation():
    p = ModelParams(3, 2)
    states = basis_states(p, 0, 5)
    for n in range(1, 4):
        for v in states:
            for w in states:
                assert inner(apply_a(-n, v), w) == inner(v, apply_a(n, w))


def test_number_operator_counts_degree():
    p = ModelParams(1, 1)
    v = FockVector.basis(p, 2, (3, 1)) + FockVector.basis(p, 2, (1,)).scale(5)
    assert apply_number(v) == FockVector.basis(p, 2, (3, 1)).scale(4) + FockVector.basis(p, 2, (1,)).scale(5)
    assert apply_C(FockVector.basis(p, 0, (3, 1))) == FockVector.basis(p, 0, (3, 1)).scale(10)


@pytest.mark.parametrize("d", range(0, 5))
def test_cubic_matches_literal_triple_sum(d):
    p = ModelParams(2, 1)
    for v in basis_states(p, 0, d):
        assert apply_cubic(v) == apply_cubic_literal(v)


def test_cubic_is_symmetric():
    p = ModelParams(1, 1)
    for d in range(1, 6):
        states = [FockVector.basis(p, 0, lam) for lam in partitions(d)]
        for v in states:
            for w in states:
                assert inner(apply_cubic(v), w) == inner(v, apply_cubic(w))


def test_hamiltonians_commute_on_sectors(params):
    p = params
    for Q in (-1, 0, 2):
        for d in range(5):
            H = [sector_matrix(lambda v, k=k: apply_H(k, v, p), Q, d, p) for k in (1, 2, 3)]
            for a in range(3):
                for b in range(a + 1, 3):
                    assert (H[a] @ H[b] - H[b] @ H[a]).is_zero()
            assert H[0].is_diagonal() and H[1].is_diagonal()


def test_h3_decomposition_and_duality(params):
    p = params
    for d in range(4):
        A = sector_matrix(lambda v: apply_H(3, v, p), 1, d, p)
        B = sector_matrix(lambda v: apply_W(3, v, p).scale(p.nu) + apply_C(v).scale(1 - p.nu * p.nu), 1, d, p)
        assert A == B
        for k in (1, 2, 3):
            X = sector_matrix(lambda v: apply_H_dual_invariant(k, v, p, p.nu), -1, d, p)
            Y = sector_matrix(lambda v: apply_H_dual_invariant(k, v, p, p.nu_dual), -1, d, p)
            assert X == Y


def test_vertex_mode_on_vacuum():
    p = ModelParams(2, 1)
    kappa = p.nu
    v = vertex_mode("plus", 2, FockVector.basis(p, 0), p)
    expected = FockVector(p, {(2, (2,)): kappa / 2, (2, (1, 1)): kappa * kappa / 2})
    assert v == expected
    assert vertex_mode("plus", 0, FockVector.basis(p, 0), p) == FockVector.basis(p, 2)
    assert vertex_mode("minus", -1, FockVector.basis(p, 0), p).is_zero()


def test_vertex_mode_annihilation_part():
    # mode -1 of exp(k sum a_{-n}/n z^n) exp(-k sum a_n/n z^-n) on |(1)>: -k * |()>
    p = ModelParams(3, 2)
    v = vertex_mode("minus", -1, FockVector.basis(p, 0, (1,)), p)
    assert v == FockVector.basis(p, -2).scale(-p.nu_dual)


def test_vertex_mode_charge_and_degree_law(params):
    p = params
    for charge in (p.r, -p.s, p.r - p.s):
        for v in basis_states(p, 0, 3):
            d = max(v.degrees())
            for n in range(-4, 4):
                w = vertex_mode_charge(charge, n, v, p)
                if d + n < 0:
                    assert w.is_zero()
                else:
                    assert w.charges() <= {charge} and w.degrees() <= {d + n}


def test_vertex_coefficients_do_not_depend_on_charge():
    p = ModelParams(2, 1)
    a = vertex_mode("plus", 1, FockVector.basis(p, 0, (2, 1)), p)
    b = vertex_mode("plus", 1, FockVector.basis(p, 7, (2, 1)), p)
    assert {lam: c for (_, lam), c in a.terms.items()} == {lam: c for (_, lam), c in b.terms.items()}


def test_sector_matrix_rejects_operators_leaving_the_sector():
    p = ModelParams(1, 1)
    with pytest.raises(ValueError):
        sector_matrix(lambda v: apply_a(-1, v), 0, 2, p)
    with pytest.raises(ValueError):
        sector_matrix(lambda v: v, 0, 13, p)


def test_matrix_rank():
    F = Fraction
    assert matrix_rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert matrix_rank([[F(1), F(0)], [F(0), F(3)]]) == 2
    assert matrix_rank([]) == 0


def test_fock_vector_json_round_trip():
    p = ModelParams(3, 2)
    v = vertex_mode("plus", 2, FockVector.basis(p, 1, (1,)), p)
    assert FockVector.from_json(json.loads(json.dumps(v.to_json()))) == v


def test_h2_eigenvalue_on_basis_states(params):
    p = params
    v = FockVector.basis(p, 3, (2, 1))
    assert apply_H(2, v, p) == v.scale(Fraction(9, 2 * p.disc) + 3)
    assert apply_H(1, v, p) == v.scale(Fraction(3, p.r))
