"""Runners for the acceptance criteria, shared by the CLI and the test suite.

Each runner returns a dict with at least ``criterion``, ``ok`` and ``summary``;
everything else is JSON-serializable detail.
"""

import os
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .exactnum import ModelParams, RatFuncG
from .fock import (apply_C, apply_H, apply_H_dual_invariant, apply_W,
                   sector_matrix)
from .numcheck import (anyon_correlator_check, kernel_residual, random_points,
                       residual_D, residual_H)
from .partition import SpectralLabel, admissible_labels, in_fat_hook, partitions
from .qseries import count_audit, lhs_series, rhs_series
from .spectra import (Degenerate, e2_lambda, e2_pseudo, e3_lambda, e3_pseudo,
                      orthogonalize, orthogonalize_symbolic, reconstruct_polynomial,
                      sector_audit, verify_corB, verify_gen_commutators)
from .symfun import proportionality, super_jack_p

RS_GRID = ((2, 1), (1, 2), (3, 1), (3, 2))
THREADS_ENV = "DCS_THREADS"


def resolve_threads(threads=None) -> int:
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1"))
    return max(1, int(threads))


def _pmap(fn, items, threads):
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def _label_str(lab) -> str:
    return f"(N={lab.N}, M={lab.M}, Q={lab.Q}, n={lab.n})"


# 1 and 2: exact eigenstates and their polynomial images

def _eigenstates_for(rs):
    p = ModelParams(*rs)
    labels = admissible_labels(p, 3, 6)
    degenerate, failed, zero = [], [], []
    for lab in labels:
        try:
            res = orthogonalize(lab, p)
        except Degenerate as exc:
            degenerate.append({"label": lab.to_json(), "m": list(exc.m)})
            continue
        if not res.verified:
            failed.append(lab.to_json())
        if res.is_zero:
            zero.append(lab.to_json())
    return {"rs": list(rs), "labels": len(labels), "degenerate": degenerate,
            "failed": failed, "zero_states": zero}


def criterion_1(threads=None, seed=0) -> dict:
    rows = _pmap(_eigenstates_for, RS_GRID, resolve_threads(threads))
    ok = all(not r["failed"] for r in rows)
    n = sum(r["labels"] for r in rows)
    nd = sum(len(r["degenerate"]) for r in rows)
    return {"criterion": 1, "ok": ok, "rows": rows,
            "summary": f"{n} labels, {nd} degenerate, "
                       f"{sum(len(r['failed']) for r in rows)} failing the eigenvalue equations"}


def _reconstruction_for(rs):
    p = ModelParams(*rs)
    bad, checked = [], 0
    for lab in admissible_labels(p, 3, 5):
        try:
            res = orthogonalize(lab, p, verify=False)
        except Degenerate:
            continue
        lam = lab.to_lambda()
        f = reconstruct_polynomial(res.state, lab.N, lab.M, p)
        h = super_jack_p(lam, lab.N, lab.M).specialize(p)
        c = proportionality(f, h)
        checked += 1
        if c is None or not c:
            bad.append({"label": lab.to_json(), "lambda": list(lam)})
    return {"rs": list(rs), "checked": checked, "not_proportional": bad}


def criterion_2(threads=None, seed=0) -> dict:
    rows = _pmap(_reconstruction_for, RS_GRID, resolve_threads(threads))
    ok = all(not r["not_proportional"] for r in rows)
    return {"criterion": 2, "ok": ok, "rows": rows,
            "summary": f"{sum(r['checked'] for r in rows)} eigenstates, "
                       f"{sum(len(r['not_proportional']) for r in rows)} not proportional"}


# 3: action of H^3 on anyon states

def criterion_3(threads=None, seed=0, count=50) -> dict:
    rng = random.Random(seed)
    pool = [(rs, lab) for rs in RS_GRID for lab in admissible_labels(ModelParams(*rs), 3, 5)]
    sample = rng.sample(pool, min(count, len(pool)))
    bad = [{"rs": list(rs), "label": lab.to_json()} for rs, lab in sample
           if not verify_corB(lab, ModelParams(*rs))]
    return {"criterion": 3, "ok": not bad, "checked": len(sample), "failed": bad,
            "summary": f"{len(sample)} sampled labels, {len(bad)} failing"}


# 4: character identity

def criterion_4(threads=None, seed=0, order=24) -> dict:
    rows = []
    for rs in ((1, 1), (2, 1), (3, 1), (3, 2)):
        p = ModelParams(*rs)
        cap = order * 2 * p.disc
        lhs, rhs = lhs_series(p, cap), rhs_series(p, cap)
        k = lhs.first_difference(rhs)
        row = {"rs": list(rs), "cap": cap, "equal": k is None, "first_mismatch": k}
        if k is not None:
            row["lhs"] = lhs.coeffs[k]
            row["rhs"] = rhs.coeffs[k]
            row["power_of_q"] = str(Fraction(k, 2 * p.disc))
        row["label_count_matches_rhs"] = count_audit(p, min(cap, 6 * 2 * p.disc))["definitional_ok"]
        rows.append(row)
    bad = [r for r in rows if not r["equal"]]
    detail = "; ".join(f"{tuple(r['rs'])}: q^{r['power_of_q']} lhs {r['lhs']} rhs {r['rhs']}" for r in bad)
    return {"criterion": 4, "ok": not bad, "rows": rows,
            "summary": "all series equal" if not bad else f"first mismatches {detail}"}


# 5: sector completeness audit

def criterion_5(threads=None, seed=0, rs=(2, 1), max_charge=2, max_degree=6) -> dict:
    p = ModelParams(*rs)
    reports = []
    for Q in range(-max_charge, max_charge + 1):
        for d in range(max_degree + 1):
            rep = sector_audit(Q, d, p)
            reports.append({k: rep[k] for k in ("Q_final", "d", "dimension", "labels", "commuting", "findings", "ok")})
    failing = [r for r in reports if not r["ok"]]
    return {"criterion": 5, "ok": not failing, "sectors": reports,
            "commuting": all(r["commuting"] for r in reports),
            "summary": f"{len(reports)} sectors, {len(failing)} with findings"}


# 6: zero-state regression

def criterion_6(threads=None, seed=0) -> dict:
    p = ModelParams(2, 1)
    res = orthogonalize(SpectralLabel(2, 0, 0, (1, 2)), p)
    g = p.g
    expected = {(1, 2): Fraction(1), (2, 1): g - 1, (3, 0): g * (g - 1) / 2}
    numeric_ok = res.is_zero and res.coefficients == expected
    G = RatFuncG.var()
    sym = orthogonalize_symbolic(2, 0, (1, 2))
    sym_expected = {(1, 2): RatFuncG.const(1), (2, 1): G - 1, (3, 0): G * (G - 1) / 2}
    symbolic_ok = sym == sym_expected
    return {"criterion": 6, "ok": numeric_ok and symbolic_ok, "zero_state": res.is_zero,
            "u": {str(m): str(c) for m, c in res.coefficients.items()},
            "symbolic_ok": symbolic_ok,
            "summary": f"zero state {res.is_zero}, u = {sorted((m, str(c)) for m, c in res.coefficients.items())}"}


# 7: generalized commutators

def _commutators_for(rs):
    rep = verify_gen_commutators(ModelParams(*rs), degree_cap=4, charges=range(-2, 3), window=4)
    return {"rs": list(rs), "checked": rep["checked"], "failures": [list(map(str, f)) for f in rep["failures"]]}


def criterion_7(threads=None, seed=0) -> dict:
    rows = _pmap(_commutators_for, ((1, 1), (2, 1)), resolve_threads(threads))
    ok = all(not r["failures"] for r in rows)
    return {"criterion": 7, "ok": ok, "rows": rows,
            "summary": f"{sum(r['checked'] for r in rows)} relations checked, "
                       f"{sum(len(r['failures']) for r in rows)} failing"}


# 8: operator identities

def criterion_8(threads=None, seed=0, max_degree=5, grid=((2, 1), (3, 2), (1, 2)), charges=(-1, 0, 1)) -> dict:
    bad = []
    checked = 0
    for rs in grid:
        p = ModelParams(*rs)
        for Q in charges:
            for d in range(max_degree + 1):
                A = sector_matrix(lambda v: apply_H(3, v, p), Q, d, p)
                B = sector_matrix(lambda v: apply_W(3, v, p).scale(p.nu) + apply_C(v).scale(1 - p.nu * p.nu), Q, d, p)
                checked += 1
                if A != B:
                    bad.append({"rs": list(rs), "Q": Q, "d": d, "identity": "H3 = nu W3 + (1 - nu^2) C"})
                for k in (1, 2, 3):
                    X = sector_matrix(lambda v: apply_H_dual_invariant(k, v, p, p.nu), Q, d, p)
                    Y = sector_matrix(lambda v: apply_H_dual_invariant(k, v, p, p.nu_dual), Q, d, p)
                    checked += 1
                    if X != Y:
                        bad.append({"rs": list(rs), "Q": Q, "d": d, "identity": f"duality k={k}"})
    return {"criterion": 8, "ok": not bad, "checked": checked, "failed": bad,
            "summary": f"{checked} sector identities, {len(bad)} failing"}


# 9: eigenvalue formulas

def _random_fat_hook(rng, max_nm=4, max_size=8):
    while True:
        N, M = rng.randint(0, max_nm), rng.randint(0, max_nm)
        if N + M == 0:
            continue
        d = rng.randint(0, max_size)
        lam = rng.choice(partitions(d))
        if in_fat_hook(lam, N, M):
            return N, M, lam


def criterion_9(threads=None, seed=0, count=200) -> dict:
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        N, M, lam = _random_fat_hook(rng)
        q0 = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        if e2_lambda(lam, N, M, q0) != e2_pseudo(lam, N, M, q0) or e3_lambda(lam, N, M, q0) != e3_pseudo(lam, N, M, q0):
            bad.append({"N": N, "M": M, "lambda": list(lam), "q0": str(q0)})
    return {"criterion": 9, "ok": not bad, "checked": count, "failed": bad,
            "summary": f"{count} random fat-hook partitions, {len(bad)} disagreeing"}


# 10: numeric differential checks

def _numeric_case(args):
    N, M, lam, g, seed = args
    pts = random_points(N, M, 10, seed=seed)
    return {"N": N, "M": M, "lambda": list(lam), "g": str(g),
            "H_zero": residual_H(N, M, lam, g, "zero", pts),
            "H_prop": residual_H(N, M, lam, g, "proposition", pts),
            "D_jack": residual_D(N, M, lam, g, pts),
            "D_power": residual_D(N, M, lam, g, pts, basis="power"),
            "kernel": kernel_residual(lam, N, M, g, pts)}


def numeric_cases(max_particles=4, max_size=4, couplings=(Fraction(1, 2), Fraction(3, 2), Fraction(2)), seed=0):
    cases = []
    for N in range(max_particles + 1):
        for M in range(max_particles + 1 - N):
            if N + M == 0:
                continue
            for d in range(max_size + 1):
                for lam in partitions(d):
                    if in_fat_hook(lam, N, M):
                        for g in couplings:
                            cases.append((N, M, lam, g, seed))
    return cases


def criterion_10(threads=None, seed=0, tol=1e-8, kernel_tol=1e-10) -> dict:
    rows = _pmap(_numeric_case, numeric_cases(seed=seed), resolve_threads(threads))
    bad = [r for r in rows
           if max(r["H_zero"], r["H_prop"], r["D_jack"], r["D_power"]) >= tol or r["kernel"] >= kernel_tol]
    worst = max(max(r["H_zero"], r["H_prop"], r["D_jack"], r["D_power"]) for r in rows)
    return {"criterion": 10, "ok": not bad, "rows": rows, "failed": bad,
            "summary": f"{len(rows)} cases, worst residual {worst:.3e}, worst kernel "
                       f"{max(r['kernel'] for r in rows):.3e}"}


# 11: vertex-product series

def criterion_11(threads=None, seed=0, D=6, tol=1e-9) -> dict:
    rows = []
    for rs in ((1, 1),) + RS_GRID:
        p = ModelParams(*rs)
        for N, M in ((2, 0), (1, 1), (0, 2)):
            rep = anyon_correlator_check(N, M, p, random_points(N, M, 10, seed=seed), D=D)
            rows.append({"rs": list(rs), "N": N, "M": M, **rep})
    bad = [r for r in rows if r["max_residual"] >= tol]
    return {"criterion": 11, "ok": not bad, "rows": rows,
            "summary": f"{len(rows)} cases, worst residual {max(r['max_residual'] for r in rows):.3e}"}


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
            11: criterion_11}


def run_criterion(k: int, threads=None, seed=0) -> dict:
    if k not in CRITERIA:
        raise KeyError(f"no criterion {k}; choose 1-{len(CRITERIA)}")
    return CRITERIA[k](threads=threads, seed=seed)
