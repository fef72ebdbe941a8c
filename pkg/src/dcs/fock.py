"""Charged boson Fock space in the unnormalized basis ``|Q;lam>_u``.

``|Q;lam>_u = a_{-lam_1} a_{-lam_2} ... R^Q |0>`` with
``<Q;lam|Q';mu>_u = delta_{QQ'} delta_{lam,mu} z_lam``.  The boson modes obey
``[a_n, a_m] = n delta_{n+m,0}`` and ``a_0`` acts as the charge ``Q``; the
rescaled zero mode is ``cQ = nu0 * a_0``.

Vertex-operator modes are parameterized by the integer charge ``c`` they add,
with statistics parameter ``kappa = c*nu0`` (``c = r`` gives ``nu``, ``c = -s``
gives ``-1/nu``).  Mode ``n`` raises the degree by ``n`` and is normalized so
that mode 0 maps ``|Q>`` to ``|Q + c>``.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exactnum import ModelParams, QuadScalar
from .partition import multiplicities, partitions, z_lambda


def _insert(lam: tuple, k: int) -> tuple:
    """Add a part ``k`` to a partition."""
    i = 0
    while i < len(lam) and lam[i] >= k:
        i += 1
    return lam[:i] + (k,) + lam[i:]


def _remove(lam: tuple, k: int) -> tuple:
    i = lam.index(k)
    return lam[:i] + lam[i + 1:]


def _merge(lam: tuple, rho: tuple) -> tuple:
    return tuple(sorted(lam + rho, reverse=True))


class FockVector:
    """Finite linear combination of ``|Q;lam>_u`` with coefficients in Q(sqrt(rs))."""

    __slots__ = ("terms", "params")

    def __init__(self, params: ModelParams, terms=None):
        self.params = params
        self.terms = {}
        for key, c in (terms or {}).items():
            if not isinstance(c, QuadScalar):
                c = params.scalar(c)
            if c:
                self.terms[(int(key[0]), tuple(key[1]))] = c

    @classmethod
    def basis(cls, params: ModelParams, Q: int, lam=()) -> "FockVector":
        return cls(params, {(Q, tuple(lam)): 1})

    @classmethod
    def _from_acc(cls, params, acc) -> "FockVector":
        v = cls.__new__(cls)
        v.params = params
        v.terms = {k: c for k, c in acc.items() if c}
        return v

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "FockVector") -> "FockVector":
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc[k] + c if k in acc else c
        return FockVector._from_acc(self.params, acc)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "FockVector":
        if not c:
            return FockVector(self.params)
        return FockVector._from_acc(self.params, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, FockVector) and self.terms == other.terms

    def coeff(self, Q: int, lam=()) -> QuadScalar:
        return self.terms.get((Q, tuple(lam)), self.params.scalar(0))

    def charges(self) -> set:
        return {Q for Q, _ in self.terms}

    def degrees(self) -> set:
        return {sum(lam) for _, lam in self.terms}

    def __repr__(self):
        body = " + ".join(f"({c})|{Q};{list(lam)}>" for (Q, lam), c in sorted(self.terms.items()))
        return f"FockVector({body or '0'})"

    def to_json(self) -> dict:
        return {"terms": [{"Q": Q, "lambda": list(lam), "coeff": c.to_json()}
                          for (Q, lam), c in sorted(self.terms.items())],
                "params": self.params.to_json()}

    @classmethod
    def from_json(cls, obj) -> "FockVector":
        p = ModelParams(int(obj["params"]["r"]), int(obj["params"]["s"]))
        return cls(p, {(t["Q"], tuple(t["lambda"])): QuadScalar.from_json(t["coeff"], p.disc)
                       for t in obj["terms"]})


def _apply_basis_map(v: FockVector, action) -> FockVector:
    """Extend ``action((Q, lam)) -> iterable of ((Q', lam'), coeff)`` linearly."""
    acc = {}
    for key, c in v.terms.items():
        for k2, a in action(key):
            term = c * a
            acc[k2] = acc[k2] + term if k2 in acc else term
    return FockVector._from_acc(v.params, acc)


def _apply_diag(v: FockVector, weight) -> FockVector:
    """Diagonal operator with eigenvalue ``weight(Q, lam)`` on ``|Q;lam>_u``."""
    acc = {}
    for (Q, lam), c in v.terms.items():
        w = weight(Q, lam)
        if w:
            acc[(Q, lam)] = c * w
    return FockVector._from_acc(v.params, acc)


# --- Heisenberg modes ---

def apply_a(n: int, v: FockVector) -> FockVector:
    """``a_n`` for any integer n (``a_0`` multiplies by the charge)."""
    if n == 0:
        return apply_a0(v)
    if n < 0:
        return _apply_basis_map(v, lambda key: [((key[0], _insert(key[1], -n)), 1)])

    def act(key):
        Q, lam = key
        m = lam.count(n)
        return [((Q, _remove(lam, n)), n * m)] if m else []

    return _apply_basis_map(v, act)


def apply_a0(v: FockVector) -> FockVector:
    return _apply_diag(v, lambda Q, lam: Q)


def inner(v: FockVector, w: FockVector) -> QuadScalar:
    """Bilinear form ``sum c_v c_w z_lam``; coefficients are real so no conjugation."""
    acc = v.params.scalar(0)
    small, big = (v, w) if len(v.terms) <= len(w.terms) else (w, v)
    for key, c in small.terms.items():
        d = big.terms.get(key)
        if d is not None:
            acc = acc + c * d * z_lambda(key[1])
    return acc


# --- quadratic and cubic boson bilinears ---

def apply_number(v: FockVector) -> FockVector:
    """``sum_{n>0} a_{-n} a_n``: the degree operator."""
    return _apply_diag(v, lambda Q, lam: sum(lam))


def apply_C(v: FockVector) -> FockVector:
    """``C = sum_{n>0} n a_{-n} a_n``, eigenvalue ``sum lam_j**2``."""
    return _apply_diag(v, lambda Q, lam: sum(x * x for x in lam))


@lru_cache(maxsize=None)
def _cubic_action(lam: tuple) -> tuple:
    """``sum_{i,j>0} (a_{-i}a_{-j}a_{i+j} + a_{-(i+j)}a_i a_j)`` on ``|lam>``."""
    acc = {}
    for k, m in multiplicities(lam):
        base = _remove(lam, k)
        for i in range(1, k):
            key = _insert(_insert(base, i), k - i)
            acc[key] = acc.get(key, 0) + k * m
    for j, mj in multiplicities(lam):
        rest = _remove(lam, j)
        for i, mi in multiplicities(rest):
            key = _insert(_remove(rest, i), i + j)
            acc[key] = acc.get(key, 0) + j * mj * i * mi
    return tuple((key, Fraction(c)) for key, c in acc.items() if c)


def apply_cubic(v: FockVector) -> FockVector:
    """One third of the normal-ordered cubic sum ``::a_n a_m a_l::`` over n+m+l = 0, all nonzero."""
    return _apply_basis_map(v, lambda key: [((key[0], lam2), c) for lam2, c in _cubic_action(key[1])])


def apply_cubic_literal(v: FockVector, p: ModelParams | None = None) -> FockVector:
    """Literal triple sum ``(1/3) sum ::a_n a_m a_l::`` (slow, used as an oracle).

    Every ordered triple of nonzero modes with zero sum is normal ordered
    (annihilators to the right) and applied; the modes are bounded by the
    degree of the input, beyond which a term vanishes.
    """
    out = FockVector(v.params)
    D = max(v.degrees(), default=0)
    third = Fraction(1, 3)
    for n1 in range(-D, D + 1):
        for n2 in range(-D, D + 1):
            n3 = -n1 - n2
            if 0 in (n1, n2, n3) or abs(n3) > D:
                continue
            ops = sorted((n1, n2, n3))  # creation (negative) first, applied last
            w = v
            for n in reversed(ops):
                w = apply_a(n, w)
                if w.is_zero():
                    break
            out = out + w.scale(third)
    return out


def _cQ(p: ModelParams, Q: int) -> QuadScalar:
    return p.nu0 * Q


def apply_H(k: int, v: FockVector, p: ModelParams | None = None, nu: QuadScalar | None = None) -> FockVector:
    """``H^{nu,k}`` for k = 1, 2, 3; ``nu`` defaults to ``sqrt(r/s)``.

    ``nu`` may be any element of ``nu0 * Z`` (e.g. ``p.nu_dual``) to get the
    dual family with the same ``nu0``.
    """
    p = p or v.params
    if nu is None:
        nu = p.nu
    if k == 1:
        inv = nu.inverse()
        return _apply_diag(v, lambda Q, lam: _cQ(p, Q) * inv)
    if k == 2:
        return _apply_diag(v, lambda Q, lam: _cQ(p, Q) * _cQ(p, Q) / 2 + sum(lam))
    if k == 3:
        nu2 = nu * nu
        nu3 = nu2 * nu

        def diag(Q, lam):
            q = _cQ(p, Q)
            return ((1 - nu2) * sum(x * x for x in lam) + nu * q * 2 * sum(lam)
                    + nu * q * q * q / 3 - nu3 * q / 12)

        return apply_cubic(v).scale(nu) + _apply_diag(v, diag)
    raise ValueError(f"H^{{nu,{k}}} is implemented for k = 1, 2, 3 only")


def apply_W(k: int, v: FockVector, p: ModelParams | None = None, nu: QuadScalar | None = None) -> FockVector:
    """``W^{nu,k}`` for k = 1, 2, 3."""
    p = p or v.params
    if nu is None:
        nu = p.nu
    if k == 1:
        return _apply_diag(v, lambda Q, lam: _cQ(p, Q))
    if k == 2:
        return apply_H(2, v, p, nu)
    if k == 3:
        nu2 = nu * nu

        def diag(Q, lam):
            q = _cQ(p, Q)
            return q * 2 * sum(lam) + q * q * q / 3 - nu2 * q / 12

        return apply_cubic(v) + _apply_diag(v, diag)
    raise ValueError(f"W^{{nu,{k}}} is implemented for k = 1, 2, 3 only")


def apply_H_dual_invariant(k: int, v: FockVector, p: ModelParams | None = None, nu: QuadScalar | None = None) -> FockVector:
    """``nu*H^1``, ``H^2`` and ``H^3/nu + (nu**2/12) cQ``: invariant under ``nu -> -1/nu``."""
    p = p or v.params
    if nu is None:
        nu = p.nu
    if k == 1:
        return apply_H(1, v, p, nu).scale(nu)
    if k == 2:
        return apply_H(2, v, p, nu)
    if k == 3:
        shift = _apply_diag(v, lambda Q, lam: nu * nu * _cQ(p, Q) / 12)
        return apply_H(3, v, p, nu).scale(nu.inverse()) + shift
    raise ValueError(k)


# --- vertex-operator modes ---

@lru_cache(maxsize=None)
def _partitions_weighted(k: int) -> tuple:
    """``(rho, l(rho), 1/z_rho)`` for rho |- k."""
    return tuple((rho, len(rho), Fraction(1, z_lambda(rho))) for rho in partitions(k))


def _submultisets(lam: tuple):
    """Yield ``(mu, rest, factor)`` with ``a_mu |lam> = factor |rest>``."""
    mult = multiplicities(lam)

    def rec(i):
        if i == len(mult):
            yield (), (), 1
            return
        k, m = mult[i]
        for mu_rest, rest_rest, f in rec(i + 1):
            for c in range(m + 1):
                fac = k ** c * factorial(m) // factorial(m - c)
                yield (k,) * c + mu_rest, (k,) * (m - c) + rest_rest, f * fac

    for mu, rest, f in rec(0):
        yield tuple(sorted(mu, reverse=True)), tuple(sorted(rest, reverse=True)), f


@lru_cache(maxsize=None)
def _mode_action(disc: int, r: int, s: int, charge: int, n: int, lam: tuple) -> tuple:
    """Coefficients of mode n of the charge-``charge`` vertex operator on ``|lam>``."""
    p = ModelParams(r, s)
    kappa = p.kappa(charge)
    D = sum(lam)
    if D + n < 0:
        return ()
    powers = [p.scalar(1)]
    for _ in range(2 * D + n + 1):
        powers.append(powers[-1] * kappa)
    acc = {}
    for mu, rest, fac in _submultisets(lam):
        j = sum(mu)
        k = j + n
        if k < 0:
            continue
        lmu = len(mu)
        base = Fraction((-1) ** lmu * fac, z_lambda(mu))
        for rho, lrho, zinv in _partitions_weighted(k):
            key = _merge(rest, rho)
            c = base * zinv
            prev = acc.get(key)
            term = powers[lmu + lrho] * c
            acc[key] = prev + term if prev is not None else term
    return tuple((key, c) for key, c in acc.items() if c)


def vertex_mode_charge(charge: int, n: int, v: FockVector, p: ModelParams | None = None) -> FockVector:
    """Mode n of the vertex operator with statistics ``charge * nu0``."""
    p = p or v.params

    def act(key):
        Q, lam = key
        return [((Q + charge, lam2), c) for lam2, c in _mode_action(p.disc, p.r, p.s, charge, n, lam)]

    return _apply_basis_map(v, act)


def kind_charge(kind: str, p: ModelParams) -> int:
    if kind == "plus":
        return p.r
    if kind == "minus":
        return -p.s
    raise ValueError(f"unknown vertex kind {kind!r}; expected 'plus' or 'minus'")


def vertex_mode(kind: str, n: int, v: FockVector, p: ModelParams | None = None) -> FockVector:
    """Mode n of ``phi_nu`` (kind ``plus``) or ``phi_{-1/nu}`` (kind ``minus``)."""
    p = p or v.params
    return vertex_mode_charge(kind_charge(kind, p), n, v, p)


# --- sector matrices ---

class SectorMatrix:
    """Operator restricted to the sector of charge Q and degree d.

    ``entries[i][j]`` is the coefficient of ``basis[i]`` in ``op(basis[j])``.
    """

    def __init__(self, Q: int, d: int, basis, entries, params: ModelParams):
        self.Q = Q
        self.d = d
        self.basis = tuple(basis)
        self.entries = [list(row) for row in entries]
        self.params = params

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _zip(self, other, f):
        return SectorMatrix(self.Q, self.d, self.basis,
                            [[f(a, b) for a, b in zip(r1, r2)]
                             for r1, r2 in zip(self.entries, other.entries)], self.params)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def scale(self, c):
        return SectorMatrix(self.Q, self.d, self.basis,
                            [[a * c for a in row] for row in self.entries], self.params)

    def __matmul__(self, other):
        n = self.dim
        zero = self.params.scalar(0)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return SectorMatrix(self.Q, self.d, self.basis, out, self.params)

    def __eq__(self, other):
        return self.basis == other.basis and self.entries == other.entries

    def is_zero(self) -> bool:
        return all(not a for row in self.entries for a in row)

    def is_diagonal(self) -> bool:
        return all(not a for i, row in enumerate(self.entries) for j, a in enumerate(row) if i != j)

    def shifted(self, e) -> "SectorMatrix":
        """``self - e * identity``."""
        rows = [list(row) for row in self.entries]
        for i in range(self.dim):
            rows[i][i] = rows[i][i] - e
        return SectorMatrix(self.Q, self.d, self.basis, rows, self.params)

    def rank(self) -> int:
        return matrix_rank(self.entries)


def matrix_rank(rows) -> int:
    """Exact rank by Gaussian elimination over any field type."""
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse() if hasattr(rows[rank][col], "inverse") else 1 / rows[rank][col]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def sector_basis(d: int) -> tuple:
    return partitions(d)


def sector_matrix(op, Q: int, d: int, p: ModelParams, cap: int = 12) -> SectorMatrix:
    """Matrix of ``op`` (a FockVector -> FockVector map) on the (Q, d) sector."""
    if d > cap:
        raise ValueError(f"degree {d} exceeds cap {cap}")
    basis = sector_basis(d)
    zero = p.scalar(0)
    cols = []
    for lam in basis:
        w = op(FockVector.basis(p, Q, lam))
        for (Q2, lam2) in w.terms:
            if Q2 != Q or sum(lam2) != d:
                raise ValueError("operator leaves the sector")
        cols.append([w.terms.get((Q, mu), zero) for mu in basis])
    entries = [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
    return SectorMatrix(Q, d, basis, entries, p)
