"""Symmetric functions in the power-sum and monomial bases; Jack and super Jack polynomials.

Jack polynomials ``P_lambda^{(1/g)}`` are produced by Gram-Schmidt in the
monomial basis, ordered by a linear extension of dominance, under the
deformed Hall product ``<p_lambda, p_mu> = delta * z_lambda * g**(-l(lambda))``.
Super Jack polynomials share the power-sum coefficients and are evaluated by
substituting the deformed Newton sums ``p_n = sum z**n - (1/g) sum w**n``.
"""

from fractions import Fraction
from functools import lru_cache

from .exactnum import ModelParams, RatFuncG, specialize_g
from .partition import (NotInFatHook, dominates, in_fat_hook, partitions,
                        z_lambda)

DEGREE_CAP = 12


class DegreeCapExceeded(ValueError):
    pass


def _check_cap(d: int, cap: int | None = None):
    cap = DEGREE_CAP if cap is None else cap
    if d > cap:
        raise DegreeCapExceeded(f"degree {d} exceeds cap {cap}")


class SymFuncP:
    """Sparse symmetric function ``sum_mu c_mu p_mu``.

    Coefficients may be RatFuncG, Fraction or QuadScalar.  ``tag`` is an
    optional ``(N, M)`` pair meaning each ``p_n`` is read as the deformed
    Newton sum in N + M variables.
    """

    def __init__(self, terms=None, tag=None):
        self.terms = {tuple(mu): c for mu, c in (terms or {}).items() if c}
        self.tag = tag

    def coeff(self, mu):
        return self.terms.get(tuple(mu), 0)

    def degrees(self) -> set:
        return {sum(mu) for mu in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SymFuncP") -> "SymFuncP":
        out = dict(self.terms)
        for mu, c in other.terms.items():
            out[mu] = out[mu] + c if mu in out else c
        return SymFuncP(out, self.tag)

    def scale(self, c) -> "SymFuncP":
        return SymFuncP({mu: c * v for mu, v in self.terms.items()}, self.tag)

    def specialize(self, p: ModelParams) -> "SymFuncP":
        """Substitute ``g = r/s`` in RatFuncG coefficients."""
        return SymFuncP({mu: specialize_g(c, p) if isinstance(c, RatFuncG) else c
                         for mu, c in self.terms.items()}, self.tag)

    def __eq__(self, other):
        return isinstance(other, SymFuncP) and self.terms == other.terms

    def __repr__(self):
        body = " + ".join(f"({c})*p{list(mu)}" for mu, c in sorted(self.terms.items()))
        return f"SymFuncP({body or '0'}{', tag=' + str(self.tag) if self.tag else ''})"

    def to_json(self, lam=None) -> dict:
        coeffs = []
        for mu in sorted(self.terms, reverse=True):
            c = self.terms[mu]
            c = c if isinstance(c, RatFuncG) else RatFuncG.const(c)
            coeffs.append({"mu": list(mu), **c.to_json()})
        out = {"basis": "p", "coeffs": coeffs}
        if lam is not None:
            out = {"lambda": list(lam), **out}
        if self.tag is not None:
            out["N"], out["M"] = self.tag
        return out


class SymFuncM(SymFuncP):
    """Sparse symmetric function in the monomial basis ``sum_mu c_mu m_mu``."""

    def to_p(self) -> SymFuncP:
        out = {}
        for lam, c in self.terms.items():
            for rho, a in m_to_p_row(lam).items():
                out[rho] = out[rho] + c * a if rho in out else c * a
        return SymFuncP(out, self.tag)


def proportionality(f: SymFuncP, h: SymFuncP):
    """Scalar ``c`` with ``f == c*h`` coefficient-wise, or None."""
    if f.is_zero() or h.is_zero():
        return None
    if set(f.terms) != set(h.terms):
        return None
    mu0 = next(iter(h.terms))
    c = f.terms[mu0] / h.terms[mu0]
    for mu, v in h.terms.items():
        if f.terms[mu] != c * v:
            return None
    return c


# --- change of basis ---

def _p_in_m_coeff(lam, mu) -> int:
    """Coefficient of ``m_mu`` in ``p_lam``: ways to pour the parts of lam into bins mu."""

    @lru_cache(maxsize=None)
    def count(i, caps):
        if i == len(lam):
            return 1 if not any(caps) else 0
        total = 0
        for j, c in enumerate(caps):
            if c >= lam[i]:
                rest = caps[:j] + (c - lam[i],) + caps[j + 1:]
                total += count(i + 1, rest)
        return total

    return count(0, tuple(mu))


@lru_cache(maxsize=None)
def p_m_transition(d: int):
    """Matrices ``(P2M, M2P)`` at degree d, indexed by ``partitions(d)``.

    ``p_lam = sum_mu P2M[lam][mu] m_mu`` and ``m_lam = sum_rho M2P[lam][rho] p_rho``.
    """
    _check_cap(d)
    parts = partitions(d)
    p2m = {}
    for lam in parts:
        row = {}
        for mu in parts:
            if dominates(mu, lam):
                c = _p_in_m_coeff(lam, mu)
                if c:
                    row[mu] = Fraction(c)
        p2m[lam] = row
    m2p = _invert(parts, p2m)
    return p2m, m2p


def _invert(keys, mat):
    """Invert a square sparse matrix over Q by Gauss-Jordan elimination."""
    idx = {k: i for i, k in enumerate(keys)}
    n = len(keys)
    rows = [[Fraction(0)] * n + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k, row in mat.items():
        for j, v in row.items():
            rows[idx[k]][idx[j]] = v
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col])
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return {keys[i]: {keys[j]: rows[i][n + j] for j in range(n) if rows[i][n + j]}
            for i in range(n)}


def m_to_p_row(lam) -> dict:
    return p_m_transition(sum(lam))[1][tuple(lam)]


def p_to_m_row(lam) -> dict:
    return p_m_transition(sum(lam))[0][tuple(lam)]


def p_to_m(f: SymFuncP) -> SymFuncM:
    out = {}
    for rho, c in f.terms.items():
        for mu, a in p_to_m_row(rho).items():
            out[mu] = out[mu] + c * a if mu in out else c * a
    return SymFuncM(out, f.tag)


# --- Jack polynomials ---

def _hall_gram(d: int, g):
    """``g**d * <m_lam, m_mu>`` for the deformed Hall product (polynomial in g)."""
    parts = partitions(d)
    m2p = p_m_transition(d)[1]
    weight = {rho: g ** (d - len(rho)) * z_lambda(rho) for rho in parts}
    gram = {}
    for i, a in enumerate(parts):
        for b in parts[i:]:
            ra, rb = m2p[a], m2p[b]
            acc = 0
            for rho, x in ra.items():
                y = rb.get(rho)
                if y:
                    acc = acc + weight[rho] * (x * y)
            gram[a, b] = gram[b, a] = acc
    return gram


def _jack_m_basis(d: int, g) -> dict:
    """Gram-Schmidt in the m-basis; returns ``{lam: {mu: coeff}}``, ``coeff[lam] == 1``."""
    parts = list(reversed(partitions(d)))  # (1^d) first: a linear extension of dominance
    gram = _hall_gram(d, g)
    one = RatFuncG.const(1) if isinstance(g, RatFuncG) else Fraction(1)
    done = []  # (P_mu, <m_a, P_mu> for all a, <P_mu, P_mu>)
    out = {}
    for lam in parts:
        vec = {lam: one}
        for pmu, gp, norm in done:
            c = gp[lam] / norm
            if c:
                for k, v in pmu.items():
                    vec[k] = vec.get(k, 0) - c * v
        vec = {k: v for k, v in vec.items() if v}
        gp = {}
        for a in parts:
            acc = 0
            for b, v in vec.items():
                acc = acc + v * gram[a, b]
            gp[a] = acc
        norm = 0
        for a, v in vec.items():
            norm = norm + v * gp[a]
        done.append((vec, gp, norm))
        out[lam] = vec
    return out


@lru_cache(maxsize=None)
def _jack_table_symbolic(d: int) -> dict:
    _check_cap(d)
    return _jack_m_basis(d, RatFuncG.var())


@lru_cache(maxsize=None)
def _jack_table_at(d: int, g: Fraction) -> dict:
    _check_cap(d)
    return _jack_m_basis(d, Fraction(g))


def jack_m(lam, g=None) -> SymFuncM:
    """Jack polynomial in the monomial basis, symbolic in g unless ``g`` is given."""
    lam = tuple(lam)
    d = sum(lam)
    table = _jack_table_symbolic(d) if g is None else _jack_table_at(d, Fraction(g))
    return SymFuncM(table[lam])


def jack_p(lam, g=None) -> SymFuncP:
    """P-normalized Jack polynomial ``P_lambda^{(1/g)}`` in the power-sum basis."""
    return jack_m(lam, g).to_p()


def super_jack_p(lam, N: int, M: int, g=None) -> SymFuncP:
    """Super Jack polynomial: Jack p-coefficients read in deformed Newton sums."""
    lam = tuple(lam)
    if not in_fat_hook(lam, N, M):
        raise NotInFatHook(f"{lam} is not in the fat ({N},{M})-hook")
    f = jack_p(lam, g)
    f.tag = (N, M)
    return f


# --- evaluation ---

def _coeff_value(c, g):
    if isinstance(c, RatFuncG):
        return c(Fraction(g))
    return c


def deformed_power_sums(z, w, g, top: int) -> list:
    """``[p_0, p_1, ..., p_top]`` of the deformed Newton sums."""
    ginv = 1 / Fraction(g) if isinstance(g, (int, Fraction)) else 1 / g
    out = []
    for n in range(top + 1):
        out.append(sum(x ** n for x in z) - ginv * sum(y ** n for y in w))
    return out


def eval_deformed(f: SymFuncP, z, w, g, convert=None):
    """Evaluate ``f`` with ``p_n`` replaced by the deformed Newton sums at (z, w).

    ``convert`` maps exact rational coefficients to the number type of the
    point (e.g. mpmath); by default coefficients are used as is.
    """
    if f.tag is not None and (len(z), len(w)) != tuple(f.tag):
        raise ValueError(f"point has arity {(len(z), len(w))}, expected {f.tag}")
    top = max((mu[0] for mu in f.terms if mu), default=0)
    gval = convert(g) if convert else g
    ps = deformed_power_sums(z, w, gval, top)
    acc = 0
    for mu, c in f.terms.items():
        c = _coeff_value(c, g)
        term = convert(c) if convert else c
        for part in mu:
            term = term * ps[part]
        acc = acc + term
    return acc


def eval_jet(f: SymFuncP, g, ps, dps, d2ps=None, convert=None):
    """Value and first/second derivatives of ``f`` along one direction.

    ``ps[n]``, ``dps[n]``, ``d2ps[n]`` are the power sums and their first and
    second derivatives in that direction.  Returns ``(F, dF, d2F)``.
    """
    tot = [0, 0, 0]
    for mu, c in f.terms.items():
        c = _coeff_value(c, g)
        c = convert(c) if convert else c
        v, dv, ddv = c, 0, 0
        for part in mu:
            a, da = ps[part], dps[part]
            dda = d2ps[part] if d2ps is not None else 0
            v, dv, ddv = v * a, v * da + dv * a, v * dda + 2 * dv * da + ddv * a
        tot[0] += v
        tot[1] += dv
        tot[2] += ddv
    return tuple(tot)


def kernel_condition_residual(lam, N: int, M: int, g, points, convert=None):
    """Max of ``|(d/dz_j + g d/dw_k) P|`` at ``z_j = w_k`` over pairs and points.

    Each point is ``(z, w)``; for every pair (j, k) the coordinate ``w_k`` is
    overwritten with ``z_j`` before differentiating through the power sums.
    Exact inputs give an exact result.
    """
    f = super_jack_p(lam, N, M)
    if not f.terms or N == 0 or M == 0:
        return 0
    top = max(mu[0] for mu in f.terms if mu) if any(f.terms) else 0
    gval = convert(g) if convert else g
    worst = 0
    for z, w in points:
        for j in range(N):
            for k in range(M):
                ww = list(w)
                ww[k] = z[j]
                ps = deformed_power_sums(z, ww, gval, top)
                # d p_n / d z_j = n z^(n-1);  g * d p_n / d w_k = -n w^(n-1)
                dps = [0] + [n * z[j] ** (n - 1) - n * ww[k] ** (n - 1)
                             for n in range(1, top + 1)]
                _, dval, _ = eval_jet(f, g, ps, dps, convert=convert)
                worst = max(worst, abs(dval))
    return worst
