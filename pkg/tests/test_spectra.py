from fractions import Fraction

import pytest

from dcs.exactnum import ModelParams, RatFuncG
from dcs.fock import FockVector, apply_H, inner
from dcs.partition import (SpectralLabel, admissible_labels, labels_in_sector, lambda_to_n,
                           partitions, preceq)
from dcs.spectra import (b_symbolic, build_eta, build_eta_direct, candidates,
                         charge_reduction_check, e2_lambda, e2_pseudo, e3_lambda, e3_pseudo,
                         eigenvalue, eigenvalues, gamma, orthogonalize, orthogonalize_symbolic,
                         pseudo_momenta, reconstruct_polynomial, sector_audit,
                         sector_spectrum_by_partitions, verify_corB, verify_gen_commutators)
from dcs.symfun import proportionality, super_jack_p

G = RatFuncG.var()


def test_pseudo_momenta_example():
    p = ModelParams(2, 1)
    pm = pseudo_momenta(SpectralLabel(2, 1, -1, (3, 1, 0)), p)
    # n_j + g(N + 1/2 - j) - M + Q/s and n_{N+k} + (M + 1/2 - k)/g - Q/r
    assert pm.values == (Fraction(4), Fraction(0), Fraction(3, 4))
    assert pm.Q1 == 2
    assert pm.q0 == Fraction(1, 2) * 3 - 1


def test_vacuum_eigenvalues(params):
    p = params
    lab = SpectralLabel(0, 0, 1, ())
    v = build_eta(lab, p)
    assert v == FockVector.basis(p, 1)
    for k, e in zip((1, 2, 3), eigenvalues(lab, p)):
        assert apply_H(k, v, p) == v.scale(e)


def test_eta_template_matches_direct_application(params):
    p = params
    for lab in admissible_labels(p, 3, 4)[:40]:
        assert build_eta(lab, p) == build_eta_direct(lab, p)


def test_eta_lands_in_final_charge_and_degree(params):
    p = params
    for lab in admissible_labels(p, 2, 4):
        v = build_eta(lab, p)
        assert v.charges() <= {lab.final_charge(p)}
        assert v.degrees() <= {lab.degree}


def test_action_formula_on_non_admissible_vectors():
    p = ModelParams(3, 2)
    for n in [(0, 2), (1, 3, 0), (2, 0, 1), (0, 0, 3)]:
        N = 1 if len(n) == 2 else 2
        lab = SpectralLabel(N, len(n) - N, 0, n)
        assert verify_corB(lab, p)


def test_gamma_values():
    assert gamma(1, 2, 2, 1) == G * (G - 1)
    assert gamma(2, 3, 2, 1) == 1 - G
    assert gamma(1, 2, 0, 2) == (G - 1) / G
    with pytest.raises(ValueError):
        gamma(2, 2, 2, 0)


def test_candidates_start_with_n_and_stay_below():
    n = (2, 1, 1)
    cands = candidates(n)
    assert cands[0] == n
    assert all(preceq(m, n) and sum(m) == sum(n) for m in cands)
    assert len(cands) == len(set(cands))


@pytest.mark.parametrize("rs", [(2, 1), (1, 2), (3, 2)])
def test_orthogonalized_states_are_exact_eigenstates(rs):
    p = ModelParams(*rs)
    for lab in admissible_labels(p, 3, 4):
        res = orthogonalize(lab, p)
        assert res.verified
        assert res.coefficients[lab.n] == 1
        assert all(preceq(m, lab.n) for m in res.coefficients)


def test_orthogonality_within_sectors():
    p = ModelParams(3, 2)
    for Qf in (-1, 0, 1):
        for d in range(1, 5):
            labs = labels_in_sector(p, Qf, d)
            states = [(orthogonalize(lab, p), lab) for lab in labs]
            for i, (a, la) in enumerate(states):
                for b, lb in states[i + 1:]:
                    if eigenvalues(la, p) != eigenvalues(lb, p):
                        assert not inner(a.state, b.state)


def test_zero_state_symbolic_coefficients():
    u = orthogonalize_symbolic(2, 0, (1, 2))
    assert u == {(1, 2): RatFuncG.const(1), (2, 1): G - 1, (3, 0): G * (G - 1) / 2}
    res = orthogonalize(SpectralLabel(2, 0, 0, (1, 2)), ModelParams(2, 1))
    assert res.is_zero and res.verified


@pytest.mark.parametrize("rs", [(2, 1), (3, 2), (1, 3)])
def test_symbolic_recursion_specializes_to_numeric(rs):
    p = ModelParams(*rs)
    for lab in admissible_labels(p, 3, 4)[:25]:
        if lab.N + lab.M == 0:
            continue
        sym = orthogonalize_symbolic(lab.N, lab.M, lab.n)
        num = orthogonalize(lab, p, verify=False).coefficients
        assert {m: c(p.g) for m, c in sym.items() if c(p.g)} == num


def test_b_is_independent_of_charge():
    p = ModelParams(3, 2)
    n, m = (3, 1, 0), (2, 1, 1)
    b = b_symbolic(2, 1, m, n)(p.g)
    for Q in (-2, 0, 1):
        lab_n, lab_m = SpectralLabel(2, 1, Q, n), SpectralLabel(2, 1, Q, m)
        assert eigenvalue(3, lab_m, p) - eigenvalue(3, lab_n, p) == b


@pytest.mark.parametrize("rs", [(2, 1), (3, 2), (1, 2)])
def test_reconstruction_is_proportional_to_super_jack(rs):
    p = ModelParams(*rs)
    for lab in admissible_labels(p, 3, 4):
        res = orthogonalize(lab, p, verify=False)
        f = reconstruct_polynomial(res.state, lab.N, lab.M, p)
        assert f.is_homogeneous() and f.degrees() <= {lab.degree}
        c = proportionality(f, super_jack_p(lab.to_lambda(), lab.N, lab.M).specialize(p))
        assert c


def test_charge_reduction():
    p = ModelParams(2, 1)
    assert charge_reduction_check(SpectralLabel(1, 2, 0, (2, 0, 0)), p)
    assert charge_reduction_check(SpectralLabel(1, 2, 1, (3, 1, 0)), p)
    assert charge_reduction_check(SpectralLabel(2, 1, 0, (2, 1, 1)), p)
    with pytest.raises(ValueError):
        charge_reduction_check(SpectralLabel(1, 2, 0, (2, 0, 1)), p, K=1)


@pytest.mark.parametrize("N,M", [(1, 0), (2, 0), (1, 1), (2, 1), (0, 3), (3, 2)])
def test_eigenvalue_formulas_agree_symbolically(N, M):
    for d in range(6):
        for lam in partitions(d):
            if len(lam) <= N or lam[N] <= M:
                for q0 in (0, Fraction(1, 2), -2):
                    assert e2_lambda(lam, N, M, q0) == e2_pseudo(lam, N, M, q0)
                    assert e3_lambda(lam, N, M, q0) == e3_pseudo(lam, N, M, q0)


def test_two_particle_constant_term():
    assert e3_lambda((), 2, 0) == G * G / 2


def test_generalized_commutators_small_window():
    for rs in [(1, 1), (3, 2)]:
        rep = verify_gen_commutators(ModelParams(*rs), degree_cap=2, charges=range(-1, 2), window=2)
        assert rep["ok"] and rep["checked"] > 0


def test_sector_audit_free_fermions():
    p = ModelParams(1, 1)
    for Qf in (-1, 0, 1):
        for d in range(5):
            rep = sector_audit(Qf, d, p)
            assert rep["ok"], rep["findings"]


def test_sector_audit_reports_findings_instead_of_raising():
    rep = sector_audit(0, 4, ModelParams(2, 1))
    assert rep["commuting"]
    assert not rep["ok"] and rep["findings"]


def test_partition_labelled_spectrum_is_complete():
    p = ModelParams(2, 1)
    for Qf in (-1, 0, 1):
        for d in range(6):
            assert sector_spectrum_by_partitions(Qf, d, p)["ok"]


def test_eigenvalue_index_validated():
    with pytest.raises(ValueError):
        eigenvalue(4, SpectralLabel(0, 0, 0, ()), ModelParams(1, 1))
