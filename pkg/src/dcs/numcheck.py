"""Floating-point checks of the differential-operator statements.

All derivatives are analytic: the ground-state factor contributes finite
cotangent sums, and the polynomial part is differentiated through the power
sums (``d p_n / d x_j = i n z_j**n`` and ``d p_n / d y_k = -(i n / g) w_k**n``).
Arithmetic runs in mpmath at a configurable binary precision (default 128).
"""

import random
from fractions import Fraction
import mpmath

from .exactnum import ModelParams, QuadScalar
from .fock import FockVector, vertex_mode_charge
from .symfun import SymFuncP, eval_jet, super_jack_p

DEFAULT_PREC = 128


class NearSingularPoint(ValueError):
    pass


class TruncationTooSmall(ValueError):
    pass


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, QuadScalar):
        return _mp(x.a) + _mp(x.b) * mpmath.sqrt(x.d)
    return mpmath.mpmathify(x)


def random_points(N: int, M: int, count: int = 10, seed: int = 0, spacing: float = 0.1) -> list:
    """Points ``(x, y)`` with ``0 > Im x_1 > ... > Im x_N > Im y_1 > ... > Im y_M``.

    Real parts are uniform in ``[-pi, pi)``; imaginary parts follow a
    decreasing ladder; consecutive gaps are at least ``spacing``.
    """
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        coords = []
        for i in range(N + M):
            re = rng.uniform(-3.14159, 3.14159)
            im = -1.25 * spacing * (i + 1) - rng.uniform(0, spacing / 4)
            coords.append(complex(re, im))
        pts.append((coords[:N], coords[N:]))
    return pts


def _check_separated(x, y):
    allc = list(x) + list(y)
    for i in range(len(allc)):
        for j in range(i + 1, len(allc)):
            if abs(mpmath.sin((allc[i] - allc[j]) / 2)) < 1e-6:
                raise NearSingularPoint(f"coordinates {i} and {j} nearly coincide")


def _ground_state_logderivs(x, y, g):
    """First and second derivatives of log Psi_0 in every coordinate."""
    N, M = len(x), len(y)
    half = mpmath.mpf(1) / 2
    quarter = mpmath.mpf(1) / 4
    dx = [mpmath.mpc(0)] * N
    ddx = [mpmath.mpc(0)] * N
    dy = [mpmath.mpc(0)] * M
    ddy = [mpmath.mpc(0)] * M
    for j in range(N):
        for j2 in range(N):
            if j2 != j:
                u = (x[j] - x[j2]) / 2
                dx[j] += g * half * mpmath.cot(u)
                ddx[j] -= g * quarter * mpmath.csc(u) ** 2
        for k in range(M):
            u = (x[j] - y[k]) / 2
            dx[j] -= half * mpmath.cot(u)
            ddx[j] += quarter * mpmath.csc(u) ** 2
            dy[k] += half * mpmath.cot(u)
            ddy[k] += quarter * mpmath.csc(u) ** 2
    for k in range(M):
        for k2 in range(M):
            if k2 != k:
                u = (y[k] - y[k2]) / 2
                dy[k] += half * mpmath.cot(u) / g
                ddy[k] -= quarter * mpmath.csc(u) ** 2 / g
    return dx, ddx, dy, ddy


def _potential(x, y, g):
    V = mpmath.mpc(0)
    N, M = len(x), len(y)
    for j in range(N):
        for j2 in range(j + 1, N):
            V += g * (g - 1) / (2 * mpmath.sin((x[j] - x[j2]) / 2) ** 2)
    for k in range(M):
        for k2 in range(k + 1, M):
            V += (g - 1) / g / (2 * mpmath.sin((y[k] - y[k2]) / 2) ** 2)
    for j in range(N):
        for k in range(M):
            V += (1 - g) / (2 * mpmath.sin((x[j] - y[k]) / 2) ** 2)
    return V


def _poly_jets(f: SymFuncP, gq: Fraction, g, z, w):
    """Value of f and its (first, second) derivatives in each x_j and y_k."""
    top = max((mu[0] for mu in f.terms if mu), default=0)
    ps = [sum(zj ** n for zj in z) - sum(wk ** n for wk in w) / g for n in range(top + 1)]
    I = mpmath.mpc(0, 1)
    jets_x, jets_y = [], []
    for zj in z:
        dps = [I * n * zj ** n for n in range(top + 1)]
        d2ps = [-(n * n) * zj ** n for n in range(top + 1)]
        jets_x.append(eval_jet(f, gq, ps, dps, d2ps, convert=_mp))
    for wk in w:
        dps = [-I * n * wk ** n / g for n in range(top + 1)]
        d2ps = [(n * n) * wk ** n / g for n in range(top + 1)]
        jets_y.append(eval_jet(f, gq, ps, dps, d2ps, convert=_mp))
    val = eval_jet(f, gq, ps, [0] * (top + 1), convert=_mp)[0]
    return val, jets_x, jets_y


def _pseudo_energy(lam, N: int, M: int, g: Fraction, q0: Fraction) -> Fraction:
    """``sum (n_j^+)**2 - g sum (n_{N+k}^+)**2`` at the given q0."""
    from .partition import lambda_to_n
    n = lambda_to_n(lam, N, M)
    half = Fraction(1, 2)
    e = Fraction(0)
    for j in range(1, N + 1):
        e += (n[j - 1] + q0 + half * g * (N + 1 - 2 * j) - half * M) ** 2
    for k in range(1, M + 1):
        e -= g * (n[N + k - 1] - q0 / g + half / g * (M + 1 - 2 * k) + half * N) ** 2
    return e


def _resolve_q0(q0_mode, N, M, g, Q) -> Fraction:
    if q0_mode in (None, "zero"):
        return Fraction(0)
    if q0_mode == "proposition":
        s = g.denominator
        return Fraction(1, 2) * (N * g - M) + Fraction(Q, s)
    return Fraction(q0_mode)


def residual_H(N: int, M: int, lam, g, q0_mode="zero", points=None, Q: int = 0, prec: int = DEFAULT_PREC):
    """Max of ``|(H_{N,M} Psi)/Psi - E|`` over points, with E from the pseudo-momenta.

    ``Psi = exp(i q0 (|x| - |y|/g)) Psi_0 P_lam``.  ``q0_mode`` is ``"zero"``,
    ``"proposition"`` (``q0 = (Ng - M)/2 + Q/s`` with s the denominator of g) or
    an explicit rational.
    """
    gq = Fraction(g)
    q0 = _resolve_q0(q0_mode, N, M, gq, Q)
    points = points if points is not None else random_points(N, M)
    f = super_jack_p(lam, N, M).specialize(ModelParams(gq.numerator, gq.denominator))
    E = _pseudo_energy(tuple(lam), N, M, gq, q0)
    with mpmath.workprec(prec):
        gm = _mp(gq)
        q0m = _mp(q0)
        Em = _mp(E)
        I = mpmath.mpc(0, 1)
        worst = mpmath.mpf(0)
        for xs, ys in points:
            x = [mpmath.mpc(c) for c in xs]
            y = [mpmath.mpc(c) for c in ys]
            _check_separated(x, y)
            z = [mpmath.exp(I * c) for c in x]
            w = [mpmath.exp(I * c) for c in y]
            dx, ddx, dy, ddy = _ground_state_logderivs(x, y, gm)
            P, jx, jy = _poly_jets(f, gq, gm, z, w)
            total = _potential(x, y, gm)
            for j in range(N):
                d1 = dx[j] + jx[j][1] / P + I * q0m
                d2 = ddx[j] + jx[j][2] / P - (jx[j][1] / P) ** 2
                total -= d2 + d1 * d1
            for k in range(M):
                d1 = dy[k] + jy[k][1] / P - I * q0m / gm
                d2 = ddy[k] + jy[k][2] / P - (jy[k][1] / P) ** 2
                total += gm * (d2 + d1 * d1)
            worst = max(worst, abs(total - Em))
        return float(worst)


def residual_D(N: int, M: int, lam, g, points=None, basis: str = "jack", prec: int = DEFAULT_PREC):
    """Max of ``|D_{N,M}(Psi_0 F)/(Psi_0 F) - |lam||`` with F = P_lam or p_lam."""
    gq = Fraction(g)
    lam = tuple(lam)
    if basis == "jack":
        f = super_jack_p(lam, N, M).specialize(ModelParams(gq.numerator, gq.denominator))
    elif basis == "power":
        f = SymFuncP({lam: Fraction(1)}, (N, M))
    else:
        raise ValueError(f"basis must be 'jack' or 'power', got {basis!r}")
    points = points if points is not None else random_points(N, M)
    with mpmath.workprec(prec):
        gm = _mp(gq)
        I = mpmath.mpc(0, 1)
        worst = mpmath.mpf(0)
        for xs, ys in points:
            x = [mpmath.mpc(c) for c in xs]
            y = [mpmath.mpc(c) for c in ys]
            _check_separated(x, y)
            z = [mpmath.exp(I * c) for c in x]
            w = [mpmath.exp(I * c) for c in y]
            dx, _, dy, _ = _ground_state_logderivs(x, y, gm)
            P, jx, jy = _poly_jets(f, gq, gm, z, w)
            s = sum(dx) + sum(dy) + sum(j[1] for j in jx) / P + sum(j[1] for j in jy) / P
            worst = max(worst, abs(-I * s - sum(lam)))
        return float(worst)


def kernel_residual(lam, N: int, M: int, g, points=None, prec: int = DEFAULT_PREC, f=None, w_weight=None):
    """Kernel condition ``(d/dz_j + g d/dw_k) P = 0`` on ``z_j = w_k``, numerically.

    The two partial derivatives are computed separately through the power
    sums ``p_n = sum z**n + w_weight * sum w**n`` (``w_weight = -1/g`` by
    default).  Any polynomial in the deformed power sums passes; other
    weights serve as a negative control.
    """
    gq = Fraction(g)
    if f is None:
        f = super_jack_p(tuple(lam), N, M).specialize(ModelParams(gq.numerator, gq.denominator))
    if not f.terms or N == 0 or M == 0:
        return 0.0
    points = points if points is not None else random_points(N, M)
    top = max((mu[0] for mu in f.terms if mu), default=0)
    with mpmath.workprec(prec):
        gm = _mp(gq)
        wt = -1 / gm if w_weight is None else _mp(Fraction(w_weight))
        I = mpmath.mpc(0, 1)
        worst = mpmath.mpf(0)
        for xs, ys in points:
            z = [mpmath.exp(I * mpmath.mpc(c)) for c in xs]
            w0 = [mpmath.exp(I * mpmath.mpc(c)) for c in ys]
            for j in range(N):
                for k in range(M):
                    w = list(w0)
                    w[k] = z[j]
                    ps = [sum(a ** n for a in z) + wt * sum(b ** n for b in w) for n in range(top + 1)]
                    dz = [0] + [n * z[j] ** (n - 1) for n in range(1, top + 1)]
                    dw = [0] + [wt * n * w[k] ** (n - 1) for n in range(1, top + 1)]
                    Pz = eval_jet(f, gq, ps, dz, convert=_mp)[1]
                    Pw = eval_jet(f, gq, ps, dw, convert=_mp)[1]
                    worst = max(worst, abs(Pz + gm * Pw))
        return float(worst)


# --- vertex-operator product series ---

def _fock_correlator_terms(charges, p: ModelParams, D: int, Q: int = 0) -> list:
    """``[(modes, amplitude)]`` for ``<Q1| phi(n_1)...phi(n_K) |Q>`` with intermediate degrees <= D."""
    K = len(charges)
    out = []

    def rec(k, state, modes):
        # apply mode for position k (0-based), moving right to left
        if k < 0:
            Q1 = Q + sum(charges)
            c = state.terms.get((Q1, ()))
            if c:
                out.append((tuple(modes), c))
            return
        deg = max(state.degrees(), default=0)
        lo = -deg
        hi = D - deg if k > 0 else -deg
        if k == 0:
            lo = -deg
        for n in range(lo, hi + 1):
            if k == 0 and n != -deg:
                continue
            w = vertex_mode_charge(charges[k], n, state, p)
            if w:
                rec(k - 1, w, [n] + modes)

    rec(K - 1, FockVector.basis(p, Q), [])
    return out


def _oracle_terms(exps, K: int, D: int) -> list:
    """Binomial expansion of ``prod_{j<k} (1 - u_j/u_k)**e_jk`` cut at degree D.

    Returns ``[(modes, coeff)]`` with ``modes[i]`` the power of ``exp(-i x_i)``;
    every cut between positions carries at most D total exponent.
    """
    pairs = [(j, k) for j in range(K) for k in range(j + 1, K)]
    out = []

    def rec(idx, ells, coeff):
        if idx == len(pairs):
            modes = [0] * K
            for (j, k), l in zip(pairs, ells):
                modes[j] -= l
                modes[k] += l
            out.append((tuple(modes), coeff))
            return
        j, k = pairs[idx]
        e = exps[j, k]
        l = 0
        c = Fraction(1)
        while True:
            trial = ells + [l]
            ok = True
            for cut in range(1, K):
                load = sum(ll for (a, b), ll in zip(pairs, trial) if a < cut <= b)
                if load > D:
                    ok = False
                    break
            if not ok:
                break
            if c:
                rec(idx + 1, trial, coeff * c)
            c = c * (e - l) / (l + 1) * -1
            l += 1

    rec(0, [], Fraction(1))
    return out


def anyon_correlator_check(N: int, M: int, p: ModelParams, points=None, D: int = 6, prec: int = DEFAULT_PREC) -> dict:
    """Compare the Fock-space mode sum with the series of the pair-product formula.

    The Fock side sums ``prod_j exp(-i n_j x_j) <Q1|phi(n_1)...phi(n_K)|Q>``
    over mode tuples whose intermediate degrees stay at most D.  The oracle
    expands ``prod_{j<k} (1 - exp(i(x_j - x_k)))**(kappa_j kappa_k)`` (the
    product formula with the zero-mode phase removed) with the same cut.
    Returns the max discrepancy and the distance of the truncated sum to the
    closed form.
    """
    K = N + M
    charges = (p.r,) * N + (-p.s,) * M
    exps = {(j, k): Fraction(charges[j] * charges[k], p.disc) for j in range(K) for k in range(j + 1, K)}
    if D < 0:
        raise TruncationTooSmall(f"truncation degree {D} must be non-negative")
    fock = _fock_correlator_terms(charges, p, D)
    oracle = _oracle_terms(exps, K, D)
    points = points if points is not None else random_points(N, M)
    with mpmath.workprec(prec):
        I = mpmath.mpc(0, 1)
        worst = mpmath.mpf(0)
        tail = mpmath.mpf(0)
        for xs, ys in points:
            x = [mpmath.mpc(c) for c in list(xs) + list(ys)]

            def phase(modes):
                return mpmath.exp(-I * sum(n * xi for n, xi in zip(modes, x)))

            a = sum((_mp(c) * phase(m) for m, c in fock), mpmath.mpc(0))
            b = sum((_mp(c) * phase(m) for m, c in oracle), mpmath.mpc(0))
            closed = mpmath.mpc(1)
            for (j, k), e in exps.items():
                closed *= (1 - mpmath.exp(I * (x[j] - x[k]))) ** _mp(e)
            worst = max(worst, abs(a - b))
            tail = max(tail, abs(a - closed))
        return {"max_residual": float(worst), "closed_form_gap": float(tail),
                "fock_terms": len(fock), "oracle_terms": len(oracle), "D": D}
