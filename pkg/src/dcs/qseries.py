"""Truncated q-series on the lattice ``q**(k/(2rs))`` and the completeness character identity.

Both sides are stored as integer exponents in units of ``q**(1/(2rs))``:

* bosonic side: ``sum_Q q**(Q**2/(2rs)) / prod_n (1 - q**n)``;
* fermionic side: ``sum_{Q,N,M} q**(e(Q,N,M)/(2rs)) / ((q)_N (q)_M)`` with
  ``e = (Q + rN - sM)**2 + 2rs N (M + chi_{Q>0})`` and Q in ``[1-s, r-s]``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .exactnum import ModelParams
from .partition import cell_exponent, enumerate_admissible, identity_window, label_exponent


@dataclass
class QSeries:
    """``sum_k coeffs[k] q**(k/unit)`` truncated after exponent ``order``."""

    unit: int
    order: int
    coeffs: list

    @classmethod
    def zero(cls, unit: int, order: int) -> "QSeries":
        return cls(unit, order, [0] * (order + 1))

    @classmethod
    def monomial(cls, unit: int, order: int, k: int, c=1) -> "QSeries":
        s = cls.zero(unit, order)
        if 0 <= k <= order:
            s.coeffs[k] = c
        return s

    def _check(self, other):
        if (self.unit, self.order) != (other.unit, other.order):
            raise ValueError("series with different grading or truncation")

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        return QSeries(self.unit, self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        out = [0] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(self.order + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return QSeries(self.unit, self.order, out)

    def shift(self, k: int) -> "QSeries":
        """Multiply by ``q**(k/unit)``, k >= 0."""
        out = [0] * (self.order + 1)
        for i in range(self.order + 1 - k):
            out[i + k] = self.coeffs[i]
        return QSeries(self.unit, self.order, out)

    def __eq__(self, other):
        return (isinstance(other, QSeries) and self.unit == other.unit
                and self.order == other.order and self.coeffs == other.coeffs)

    def first_difference(self, other: "QSeries"):
        """Smallest exponent where the coefficients differ, or None."""
        self._check(other)
        for k, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return k
        return None

    def nonzero_terms(self) -> list:
        return [(k, c) for k, c in enumerate(self.coeffs) if c]


def inverse_qpochhammer(N: int, unit: int, order: int) -> QSeries:
    """``1 / prod_{n=1}^N (1 - q**n)`` with ``q = x**unit``; N=None means infinite."""
    out = [0] * (order + 1)
    out[0] = 1
    top = order // unit if N is None else N
    for n in range(1, top + 1):
        step = n * unit
        if step > order:
            break
        for k in range(step, order + 1):
            out[k] += out[k - step]
    return QSeries(unit, order, out)


def partition_series(unit: int, order: int) -> QSeries:
    return inverse_qpochhammer(None, unit, order)


def lhs_series(p: ModelParams, cap: int) -> QSeries:
    """Bosonic character ``sum_Q q**(Q**2/(2rs)) / (q)_infinity`` up to exponent ``cap``."""
    unit = 2 * p.disc
    theta = QSeries.zero(unit, cap)
    top = isqrt(cap)
    for Q in range(-top, top + 1):
        theta.coeffs[Q * Q] += 1
    return theta * partition_series(unit, cap)


def rhs_series(p: ModelParams, cap: int, window=None) -> QSeries:
    """Fermionic sum over charge-window cells ``(Q, N, M)`` up to exponent ``cap``."""
    unit = 2 * p.disc
    lo, hi = window if window is not None else identity_window(p)
    out = QSeries.zero(unit, cap)
    pochs = {}
    for Q in range(lo, hi + 1):
        reach = isqrt(cap + Q * Q) + 1 + abs(Q)
        for N in range(reach // p.r + 2):
            for M in range(reach // p.s + 2):
                e = cell_exponent(Q, N, M, p)
                if e > cap:
                    continue
                for k in (N, M):
                    if k not in pochs:
                        pochs[k] = inverse_qpochhammer(k, unit, cap)
                out = out + (pochs[N] * pochs[M]).shift(e)
    return out


def label_series(labels, p: ModelParams, cap: int) -> QSeries:
    """Generating function ``sum q**(2rs E_2)`` of a label list."""
    out = QSeries.zero(2 * p.disc, cap)
    for lab in labels:
        e = label_exponent(lab, p)
        if e <= cap:
            out.coeffs[e] += 1
    return out


def count_audit(p: ModelParams, cap: int, window=None, labels=None) -> dict:
    """Count labels by exponent and compare with both sides of the identity.

    ``window`` defaults to the fermionic-side charge window so that the label
    count and ``rhs_series`` describe the same sum.
    """
    if window is None:
        window = identity_window(p)
    if labels is None:
        labels = enumerate_admissible(p, cap, window)
    counts = label_series(labels, p, cap)
    rhs = rhs_series(p, cap, window)
    lhs = lhs_series(p, cap)
    d_rhs = counts.first_difference(rhs)
    d_lhs = counts.first_difference(lhs)
    return {
        "params": p.to_json(),
        "cap": cap,
        "window": list(window),
        "labels": len(labels),
        "definitional_ok": d_rhs is None,
        "definitional_first_mismatch": d_rhs,
        "identity_ok": d_lhs is None,
        "identity_first_mismatch": d_lhs,
        "identity_mismatch_detail": None if d_lhs is None else {
            "exponent": d_lhs, "as_power_of_q": str(Fraction(d_lhs, 2 * p.disc)),
            "labels": counts.coeffs[d_lhs], "bosonic": lhs.coeffs[d_lhs]},
    }


def character_table(p: ModelParams, order: int) -> list:
    """Rows ``(exponent, lhs, rhs, equal)`` for exponents up to ``order * 2rs``."""
    cap = order * 2 * p.disc
    lhs = lhs_series(p, cap)
    rhs = rhs_series(p, cap)
    return [(k, a, b, a == b) for k, (a, b) in enumerate(zip(lhs.coeffs, rhs.coeffs))]
