"""Anyon states, eigenvalues, the triangular orthogonalization and sector audits.

An anyon state is a product of vertex-operator modes on a charged vacuum,

    eta^{N,M}_Q(n) = phi_nu(n_1) ... phi_nu(n_N) phi_{-1/nu}(n_{N+1}) ... phi_{-1/nu}(n_{N+M}) |Q>,

applied right to left.  Its final charge is ``Q + N r - M s`` and its degree
is ``|n|``; it vanishes when some tail sum of ``n`` is negative.  ``H^{nu,3}``
acts triangularly on these states with respect to the tail-sum order, and
solving the triangular system gives exact common eigenstates.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .exactnum import ModelParams, QuadScalar, RatFuncG
from .fock import (FockVector, _mode_action, apply_H, sector_matrix,
                   vertex_mode_charge)
from .partition import (SpectralLabel, labels_in_sector, partition_count,
                        partitions, tail_sums)
from .symfun import SymFuncP


class Degenerate(ArithmeticError):
    """``b_n(m) = 0`` with a nonzero source term: the recursion cannot proceed."""

    def __init__(self, m, label):
        super().__init__(f"degenerate denominator at m={m} for label {label}")
        self.m = m
        self.label = label


# --- pseudo-momenta and eigenvalues ---

@dataclass(frozen=True)
class PseudoMomenta:
    values: tuple
    q0: Fraction
    Q1: int


def _pm_values(N: int, M: int, Q: int, n, g, qs, qr) -> list:
    """Pseudo-momenta for any integer vector n; ``qs = Q/s``, ``qr = Q/r``."""
    half = Fraction(1, 2)
    out = []
    for j in range(1, N + 1):
        out.append(n[j - 1] + g * (N + half - j) - M + qs)
    for k in range(1, M + 1):
        out.append(n[N + k - 1] + (M + half - k) / g - qr)
    return out


def pseudo_momenta(label: SpectralLabel, p: ModelParams) -> PseudoMomenta:
    N, M, Q = label.N, label.M, label.Q
    vals = _pm_values(N, M, Q, label.n, p.g, Fraction(Q, p.s), Fraction(Q, p.r))
    q0 = Fraction(1, 2) * (N * p.g - M) + Fraction(Q, p.s)
    return PseudoMomenta(tuple(vals), q0, label.final_charge(p))


def _e3_value(N: int, M: int, Q: int, n, p: ModelParams) -> Fraction:
    g = p.g
    pm = _pm_values(N, M, Q, n, g, Fraction(Q, p.s), Fraction(Q, p.r))
    r, s = p.r, p.s
    return (sum(x * x for x in pm[:N]) - g * sum(x * x for x in pm[N:])
            + (g - 1 / g) * M / 12
            + Fraction(Q ** 3, 3 * r * s * s) - Fraction(r * Q, 12 * s * s))


def eigenvalue(k: int, label: SpectralLabel, p: ModelParams) -> QuadScalar:
    """``E_k`` of the anyon-built eigenstate with this label (k = 1, 2, 3)."""
    N, M, Q = label.N, label.M, label.Q
    if k == 1:
        val = N - M / p.g + Fraction(Q, p.r)
    elif k == 2:
        val = sum(pseudo_momenta(label, p).values) + Fraction(Q * Q, 2 * p.disc)
    elif k == 3:
        val = _e3_value(N, M, Q, label.n, p)
    else:
        raise ValueError(f"eigenvalue index must be 1, 2 or 3, got {k}")
    return p.scalar(val)


def eigenvalues(label: SpectralLabel, p: ModelParams) -> tuple:
    return tuple(eigenvalue(k, label, p) for k in (1, 2, 3))


# Eigenvalues in terms of the partition, symbolic in g.

def _g():
    return RatFuncG.var()


def e2_lambda(lam, N: int, M: int, q0=0):
    """``|lam| + q0 (N - M/g)``."""
    g = _g()
    return sum(lam) + q0 * (N - M / g) if N or M else RatFuncG.const(sum(lam))


def e3_lambda(lam, N: int, M: int, q0=0):
    """Eigenvalue of ``H_{N,M}`` on ``e^{i q0(|x|-|y|/g)} Psi_0 P_lam``, symbolic in g.

    ``sum_j [lam_j**2 - g(2j-1) lam_j] + (gN - M)|lam| + (g**2/12)[(N-M/g)**3 - (N-M/g**3)]``
    plus the shift ``2 q0 |lam| + q0**2 (N - M/g)``.
    """
    g = _g()
    d = sum(lam)
    base = RatFuncG.const(0)
    for j, x in enumerate(lam, start=1):
        base = base + (x * x - g * ((2 * j - 1) * x))
    base = base + (g * N - M) * d
    a = N - M / g
    base = base + g * g * (a * a * a - (N - M / (g * g * g))) / 12
    return base + 2 * q0 * d + q0 * q0 * a


def e2_pseudo(lam, N: int, M: int, q0=0):
    """``sum_j n_j^+`` with the q0-dependent pseudo-momenta."""
    return sum(_pseudo_symbolic(lam, N, M, q0), RatFuncG.const(0))


def e3_pseudo(lam, N: int, M: int, q0=0):
    """``sum_{j<=N} (n_j^+)**2 - g sum_k (n_{N+k}^+)**2``."""
    g = _g()
    pm = _pseudo_symbolic(lam, N, M, q0)
    out = RatFuncG.const(0)
    for x in pm[:N]:
        out = out + x * x
    for x in pm[N:]:
        out = out - g * x * x
    return out


def _pseudo_symbolic(lam, N: int, M: int, q0) -> list:
    from .partition import lambda_to_n
    g = _g()
    n = lambda_to_n(lam, N, M)
    half = Fraction(1, 2)
    out = []
    for j in range(1, N + 1):
        out.append(n[j - 1] + q0 + half * g * (N + 1 - 2 * j) - half * M)
    for k in range(1, M + 1):
        out.append(n[N + k - 1] - q0 / g + half / g * (M + 1 - 2 * k) + half * N)
    return out


# --- anyon states ---

def _charges(N: int, M: int, p: ModelParams) -> tuple:
    return (p.r,) * N + (-p.s,) * M


@lru_cache(maxsize=200000)
def _eta_template(r: int, s: int, ops: tuple) -> tuple:
    """``prod phi_{c}(n) |0>`` as ``((lam, coeff), ...)`` ignoring the charge label."""
    if not ops:
        p = ModelParams(r, s)
        return (((), p.scalar(1)),)
    charge, n = ops[0]
    inner_terms = _eta_template(r, s, ops[1:])
    if not inner_terms:
        return ()
    disc = r * s
    acc = {}
    for lam, c in inner_terms:
        for lam2, a in _mode_action(disc, r, s, charge, n, lam):
            t = c * a
            acc[lam2] = acc[lam2] + t if lam2 in acc else t
    return tuple((lam, c) for lam, c in acc.items() if c)


def eta_vector(N: int, M: int, Q: int, n, p: ModelParams) -> FockVector:
    """Anyon state for an arbitrary integer vector ``n`` (not necessarily a valid label)."""
    n = tuple(n)
    if any(t < 0 for t in tail_sums(n)):
        return FockVector(p)
    ops = tuple(zip(_charges(N, M, p), n))
    Q1 = Q + N * p.r - M * p.s
    return FockVector._from_acc(p, {(Q1, lam): c for lam, c in _eta_template(p.r, p.s, ops)})


def build_eta(label: SpectralLabel, p: ModelParams) -> FockVector:
    return eta_vector(label.N, label.M, label.Q, label.n, p)


def build_eta_direct(label: SpectralLabel, p: ModelParams) -> FockVector:
    """Same as :func:`build_eta` by explicit right-to-left mode application."""
    v = FockVector.basis(p, label.Q)
    for charge, n in reversed(list(zip(_charges(label.N, label.M, p), label.n))):
        v = vertex_mode_charge(charge, n, v, p)
    return v


def gamma(j: int, k: int, N: int, M: int, g=None):
    """Two-body coupling between positions j < k (1-based); RatFuncG unless g is given."""
    if not 1 <= j < k <= N + M:
        raise ValueError(f"need 1 <= j < k <= N+M, got j={j}, k={k}")
    G = _g() if g is None else Fraction(g)
    if k <= N:
        return G * (G - 1)
    if j > N:
        return (G - 1) / G
    return 1 - G


def _shift(n: tuple, j: int, k: int, mu: int) -> tuple:
    """``n + mu (e_j - e_k)`` with 0-based j, k."""
    out = list(n)
    out[j] += mu
    out[k] -= mu
    return tuple(out)


def corB_rhs(label: SpectralLabel, p: ModelParams) -> FockVector:
    """``E_3 eta(n) - 2 sum_{j<k} gamma_jk sum_mu mu eta(n + mu(e_j - e_k))``."""
    N, M, Q, n = label.N, label.M, label.Q, label.n
    L = N + M
    T = tail_sums(n)
    out = build_eta(label, p).scale(eigenvalue(3, label, p))
    for j in range(L):
        for k in range(j + 1, L):
            gam = gamma(j + 1, k + 1, N, M, p.g)
            if not gam:
                continue
            bound = min(T[i] for i in range(j + 1, k + 1))
            for mu in range(1, bound + 1):
                eta = eta_vector(N, M, Q, _shift(n, j, k, mu), p)
                if eta:
                    out = out - eta.scale(2 * gam * mu)
    return out


def verify_corB(label: SpectralLabel, p: ModelParams) -> bool:
    """Exact check of the H^{nu,3} action formula and the H^1, H^2 eigen-relations."""
    eta = build_eta(label, p)
    for k in (1, 2):
        if apply_H(k, eta, p) != eta.scale(eigenvalue(k, label, p)):
            return False
    return apply_H(3, eta, p) == corB_rhs(label, p)


# --- orthogonalization ---

@dataclass
class OrthoResult:
    label: SpectralLabel
    coefficients: dict
    state: FockVector
    eigenvalues: tuple
    is_zero: bool
    verified: bool
    resonances: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "label": self.label.to_json(),
            "params": self.state.params.to_json(),
            "u": [{"m": list(m), "coeff": f"{c.numerator}/{c.denominator}"}
                  for m, c in self.coefficients.items()],
            "eigenvalues": [e.to_json() for e in self.eigenvalues],
            "zero_state": self.is_zero,
            "verified": self.verified,
            "resonances": [list(m) for m in self.resonances],
            "state": self.state.to_json(),
        }


def candidates(n) -> list:
    """Integer vectors m with ``sum m = sum n`` and ``0 <= T_i(m) <= T_i(n)`` for i >= 2.

    Ordered by decreasing total of tail sums, so n comes first and every
    source ``m - mu (e_j - e_k)`` of a vector precedes it.
    """
    n = tuple(n)
    L = len(n)
    if L == 0:
        return [()]
    T = tail_sums(n)
    out = []
    for tails in product(*(range(T[i] + 1) for i in range(1, L))):
        full = (T[0],) + tails + (0,)
        out.append(tuple(full[i] - full[i + 1] for i in range(L)))
    out.sort(key=lambda m: (-sum(tail_sums(m)), tuple(-t for t in tail_sums(m))))
    return out


def _recursion(N: int, M: int, n: tuple, gam, b_of, zero, label):
    """Shared triangular recursion over any coefficient field."""
    L = N + M
    Tn = tail_sums(n)
    cands = candidates(n)
    u = {n: zero + 1}
    resonances = []
    for m in cands[1:]:
        Tm = tail_sums(m)
        src = zero
        for j in range(L):
            for k in range(j + 1, L):
                gjk = gam[j][k]
                if not gjk:
                    continue
                room = min(Tn[i] - Tm[i] for i in range(j + 1, k + 1))
                for mu in range(1, room + 1):
                    c = u.get(_shift(m, k, j, mu))
                    if c:
                        src = src + gjk * mu * c
        b = b_of(m)
        if not b:
            if src:
                raise Degenerate(m, label)
            resonances.append(m)
            continue
        c = 2 * src / b
        if c:
            u[m] = c
    return u, resonances


def orthogonalize(label: SpectralLabel, p: ModelParams, verify: bool = True) -> OrthoResult:
    """Solve the triangular recursion for ``u_n(m)`` and assemble the eigenstate."""
    N, M, Q, n = label.N, label.M, label.Q, label.n
    L = N + M
    gam = [[gamma(j + 1, k + 1, N, M, p.g) if j < k else 0 for k in range(L)] for j in range(L)]
    e3n = _e3_value(N, M, Q, n, p)
    u, res = _recursion(N, M, n, gam, lambda m: _e3_value(N, M, Q, m, p) - e3n,
                        Fraction(0), label)
    state = FockVector(p)
    for m, c in u.items():
        eta = eta_vector(N, M, Q, m, p)
        if eta:
            state = state + eta.scale(c)
    evs = eigenvalues(label, p)
    ok = True
    if verify:
        ok = all(apply_H(k, state, p) == state.scale(evs[k - 1]) for k in (1, 2, 3))
    return OrthoResult(label, u, state, evs, state.is_zero(), ok, res)


def b_symbolic(N: int, M: int, m, n):
    """``b_n(m) = E_3(m) - E_3(n)`` as a rational function of g.

    The charge enters the pseudo-momenta through ``Q/s`` and ``Q/r`` only,
    and those contributions cancel because ``sum m == sum n``.
    """
    g = _g()
    half = Fraction(1, 2)

    def e3(v):
        out = RatFuncG.const(0)
        for j in range(1, N + 1):
            x = v[j - 1] + g * (N + half - j) - M
            out = out + x * x
        for k in range(1, M + 1):
            y = v[N + k - 1] + (M + half - k) / g
            out = out - g * y * y
        return out

    return e3(m) - e3(n)


def orthogonalize_symbolic(N: int, M: int, n) -> dict:
    """The coefficients ``u_n(m)`` as rational functions of g."""
    n = tuple(n)
    L = N + M
    gam = [[gamma(j + 1, k + 1, N, M) if j < k else 0 for k in range(L)] for j in range(L)]
    label = SpectralLabel(N, M, 0, n)
    u, _ = _recursion(N, M, n, gam, lambda m: b_symbolic(N, M, m, n),
                      RatFuncG.const(0), label)
    return u


# --- reconstruction ---

def reconstruct_polynomial(psi: FockVector, N: int, M: int, p: ModelParams) -> SymFuncP:
    """``sum_mu nu**l(mu) c_mu p_mu`` with ``c_mu`` the coefficient on ``|Q1;mu>_u``."""
    if len(psi.charges()) > 1 or len(psi.degrees()) > 1:
        raise ValueError("state mixes charges or degrees")
    nu_pow = [p.scalar(1)]
    out = {}
    for (_, mu), c in psi.terms.items():
        while len(nu_pow) <= len(mu):
            nu_pow.append(nu_pow[-1] * p.nu)
        out[mu] = nu_pow[len(mu)] * c
    return SymFuncP(out, (N, M))


# --- generalized commutators and charge reduction ---

def _gen_binom(a: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out = out * (a - i) / (i + 1)
    return out


def verify_gen_commutators(p: ModelParams, degree_cap: int = 4, charges=range(-2, 3), window: int = 4) -> dict:
    """Check both generalized commutator relations on all basis states in range."""
    report = {"checked": 0, "failures": []}
    kinds = [(p.r, p.g), (-p.s, 1 / p.g)]
    for Q in charges:
        for d in range(degree_cap + 1):
            for lam in partitions(d):
                v = FockVector.basis(p, Q, lam)
                for n in range(-window, window + 1):
                    for m in range(-window, window + 1):
                        for charge, k2 in kinds:
                            top = d + max(n, m) + 1
                            acc = FockVector(p)
                            for ell in range(top + 1):
                                c = _gen_binom(-k2, ell) * (-1) ** ell
                                if not c:
                                    continue
                                t1 = vertex_mode_charge(charge, n + ell, vertex_mode_charge(charge, m - ell, v, p), p)
                                t2 = vertex_mode_charge(charge, m + ell, vertex_mode_charge(charge, n - ell, v, p), p)
                                acc = acc + (t1 - t2).scale(c)
                            report["checked"] += 1
                            if acc:
                                report["failures"].append(("CARgen", charge, Q, lam, n, m))
                        lhs = (vertex_mode_charge(p.r, n, vertex_mode_charge(-p.s, m, v, p), p)
                               + vertex_mode_charge(-p.s, m + 1, vertex_mode_charge(p.r, n - 1, v, p), p))
                        rhs = vertex_mode_charge(p.r - p.s, n + m, v, p)
                        report["checked"] += 1
                        if lhs != rhs:
                            report["failures"].append(("mixed", Q, lam, n, m))
    report["ok"] = not report["failures"]
    return report


def charge_reduction_check(label: SpectralLabel, p: ModelParams, K: int | None = None) -> bool:
    """Trailing zero minus-modes only shift the vacuum charge."""
    N, M, Q, n = label.N, label.M, label.Q, label.n
    if K is None:
        K = M
        while K > 0 and n[N + K - 1] == 0:
            K -= 1
    if any(n[N + K:]):
        raise ValueError("entries after position N+K must vanish")
    reduced = SpectralLabel(N, K, Q - (M - K) * p.s, n[:N + K])
    return build_eta(label, p) == build_eta(reduced, p)


# --- sector audit ---

def _kernel_dim(mat, e) -> int:
    return mat.dim - mat.shifted(e).rank()


def sector_audit(Q_final: int, d: int, p: ModelParams, window=None, cap: int = 12) -> dict:
    """Compare predicted eigenvalue multiplicities with exact sector spectra."""
    if d > cap:
        raise ValueError(f"degree {d} exceeds cap {cap}")
    labels = labels_in_sector(p, Q_final, d, window)
    H = {k: sector_matrix(lambda v, k=k: apply_H(k, v, p), Q_final, d, p) for k in (1, 2, 3)}
    findings = []
    commuting = all((H[a] @ H[b] - H[b] @ H[a]).is_zero() for a, b in ((1, 2), (1, 3), (2, 3)))
    if not commuting:
        findings.append("sector matrices do not commute")
    predicted = {}
    for lab in labels:
        key = eigenvalues(lab, p)
        predicted.setdefault(key, []).append(lab)
    groups = []
    total = 0
    for (e1, e2, e3), labs in sorted(predicted.items(), key=lambda kv: float(kv[0][2])):
        dim = min(_kernel_dim(H[1], e1), _kernel_dim(H[2], e2), _kernel_dim(H[3], e3))
        total += dim
        groups.append({"E": [e.to_json() for e in (e1, e2, e3)],
                       "labels": [lab.to_json() for lab in labs],
                       "multiplicity": len(labs), "eigenspace_dim": dim})
        if dim != len(labs):
            findings.append(f"E3={e3}: {len(labs)} label(s) but eigenspace dimension {dim}")
    pd = partition_count(d)
    if len(labels) != pd:
        findings.append(f"{len(labels)} label(s) for a sector of dimension {pd}")
    if total != pd:
        findings.append(f"predicted eigenspaces span {total} of {pd} dimensions")
    return {"Q_final": Q_final, "d": d, "params": p.to_json(), "dimension": pd,
            "labels": len(labels), "groups": groups, "commuting": commuting,
            "findings": findings, "ok": not findings}


def sector_spectrum_by_partitions(Q_final: int, d: int, p: ModelParams) -> dict:
    """Audit the sector against one predicted eigenvalue per partition of d.

    Each partition ``lam`` is represented by the label ``(l(lam), 0, Q_final
    - l(lam) r, lam)``, whose eigenvalue depends only on ``lam`` and the final
    charge.  This is the count a complete basis must reproduce.
    """
    H3 = sector_matrix(lambda v: apply_H(3, v, p), Q_final, d, p)
    counts = {}
    for lam in partitions(d):
        N = len(lam)
        e = eigenvalue(3, SpectralLabel(N, 0, Q_final - N * p.r, lam), p)
        counts[e] = counts.get(e, 0) + 1
    dims = {e: _kernel_dim(H3, e) for e in counts}
    ok = all(dims[e] == c for e, c in counts.items()) and sum(dims.values()) == H3.dim
    return {"ok": ok, "counts": {str(e): c for e, c in counts.items()},
            "dims": {str(e): v for e, v in dims.items()}}
