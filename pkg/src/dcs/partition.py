"""Partition combinatorics and spectral labels.

Partitions are plain tuples of positive integers in weakly decreasing order;
``()`` is the empty partition.  Integer vectors ``n`` of length ``N + M`` are
plain tuples whose split is always passed alongside them.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt

from .exactnum import ModelParams


class NotInFatHook(ValueError):
    """The partition violates ``lambda_{N+1} <= M``."""


def as_partition(parts) -> tuple:
    """Normalize an iterable of non-negative integers to a partition."""
    out = tuple(sorted((int(x) for x in parts if x), reverse=True))
    if out and out[-1] < 0:
        raise ValueError(f"negative part in {parts!r}")
    return out


def size(lam) -> int:
    return sum(lam)


def conjugate(lam) -> tuple:
    """Transpose the Young diagram: column lengths of ``lam``."""
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= i) for i in range(1, lam[0] + 1))


def multiplicities(lam) -> list:
    """``[(part, count), ...]`` in increasing order of part."""
    counts = {}
    for x in lam:
        counts[x] = counts.get(x, 0) + 1
    return sorted(counts.items())


def z_lambda(lam) -> int:
    """``prod_n m_n! * n**m_n``, the centralizer order."""
    out = 1
    for part, m in multiplicities(lam):
        out *= factorial(m) * part ** m
    return out


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple:
    """All partitions of ``n`` in reverse lexicographic order, (n) first."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partition_count(n: int) -> int:
    return len(partitions(n))


def dominates(lam, mu) -> bool:
    """``lam >= mu`` in dominance order (equal sizes assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def in_fat_hook(lam, N: int, M: int) -> bool:
    return len(lam) <= N or lam[N] <= M


def lambda_to_n(lam, N: int, M: int) -> tuple:
    """Map a fat-hook partition to its integer vector ``n`` of length N+M.

    The first N entries are ``lam_1..lam_N``; the last M are the conjugate of
    the remaining rows ``(lam_{N+1}, lam_{N+2}, ...)``, padded with zeros.
    """
    lam = tuple(lam)
    if not in_fat_hook(lam, N, M):
        raise NotInFatHook(f"{lam} is not in the fat ({N},{M})-hook")
    head = lam[:N] + (0,) * (N - len(lam[:N]))
    tail = conjugate(lam[N:])
    return head + tail + (0,) * (M - len(tail))


def is_bijection_vector(n, N: int, M: int) -> bool:
    """Whether ``n`` is in the image of :func:`lambda_to_n`."""
    if len(n) != N + M or any(x < 0 for x in n):
        return False
    x, y = n[:N], n[N:]
    if any(x[i] < x[i + 1] for i in range(N - 1)):
        return False
    if any(y[i] < y[i + 1] for i in range(M - 1)):
        return False
    K = sum(1 for v in y if v > 0)
    return not x or x[-1] >= K


def n_to_lambda(n, N: int, M: int) -> tuple:
    """Inverse of :func:`lambda_to_n`."""
    n = tuple(n)
    if not is_bijection_vector(n, N, M):
        raise ValueError(f"{n} is not a valid ({N},{M}) integer vector")
    return as_partition(n[:N]) + conjugate(as_partition(n[N:]))


def tail_sums(n) -> tuple:
    """``(T_1, ..., T_L)`` with ``T_i = n_i + ... + n_L``."""
    out = []
    acc = 0
    for x in reversed(n):
        acc += x
        out.append(acc)
    return tuple(reversed(out))


def preceq(m, n) -> bool:
    """Partial order: every tail sum of ``m`` is at most that of ``n``."""
    if len(m) != len(n):
        raise ValueError("vectors of different length")
    return all(a <= b for a, b in zip(tail_sums(m), tail_sums(n)))


@dataclass(frozen=True, order=True)
class SpectralLabel:
    """Label ``(N, M, Q, n)`` of an anyon state; ``len(n) == N + M``."""

    N: int
    M: int
    Q: int
    n: tuple

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        if len(self.n) != self.N + self.M:
            raise ValueError(f"n has length {len(self.n)}, expected N+M={self.N + self.M}")

    @property
    def degree(self) -> int:
        return sum(self.n)

    def final_charge(self, p: ModelParams) -> int:
        return self.Q + self.N * p.r - self.M * p.s

    def to_lambda(self) -> tuple:
        return n_to_lambda(self.n, self.N, self.M)

    def is_admissible(self, p: ModelParams, window=None) -> bool:
        lo, hi = window if window is not None else admissible_window(p)
        if not lo <= self.Q <= hi:
            return False
        x, y = self.n[:self.N], self.n[self.N:]
        chi = 1 if self.Q > 0 else 0
        if any(x[i] < x[i + 1] for i in range(self.N - 1)):
            return False
        if x and x[-1] < self.M + chi:
            return False
        if any(y[i] < y[i + 1] for i in range(self.M - 1)):
            return False
        return all(v >= 0 for v in y)

    def to_json(self) -> dict:
        return {"N": self.N, "M": self.M, "Q": self.Q, "n": list(self.n)}

    @classmethod
    def from_json(cls, d) -> "SpectralLabel":
        return cls(int(d["N"]), int(d["M"]), int(d["Q"]), tuple(d["n"]))


def admissible_window(p: ModelParams) -> tuple:
    """Charge range ``1 - r <= Q <= s - r`` of the admissibility condition."""
    return (1 - p.r, p.s - p.r)


def identity_window(p: ModelParams) -> tuple:
    """Charge range ``1 - s <= Q <= r - s`` of the fermionic side of the character identity."""
    return (1 - p.s, p.r - p.s)


def label_exponent(label: SpectralLabel, p: ModelParams) -> int:
    """``2rs * E_2`` for the label, i.e. ``Q_final**2 + 2rs*|n|``."""
    qf = label.final_charge(p)
    return qf * qf + 2 * p.disc * label.degree


def cell_exponent(Q: int, N: int, M: int, p: ModelParams) -> int:
    """Lowest exponent (units ``q**(1/(2rs))``) of the admissible labels in a (Q, N, M) cell."""
    chi = 1 if Q > 0 else 0
    qf = Q + N * p.r - M * p.s
    return qf * qf + 2 * p.disc * N * (M + chi)


def _bounded_partitions(total: int, max_len: int):
    """Partitions of ``total`` with at most ``max_len`` parts."""
    for lam in partitions(total):
        if len(lam) <= max_len:
            yield lam


def enumerate_admissible(p: ModelParams, weight_cap: int, window=None) -> list:
    """All admissible labels with ``2rs * E_2 <= weight_cap``.

    The charge window defaults to :func:`admissible_window`.  Labels are
    returned sorted by ``(weight, Q, N, M, n)``.
    """
    if weight_cap < 0:
        return []
    lo, hi = window if window is not None else admissible_window(p)
    unit = 2 * p.disc
    out = []
    for Q in range(lo, hi + 1):
        chi = 1 if Q > 0 else 0
        reach = isqrt(weight_cap + Q * Q) + 1 + abs(Q)
        for N in range(reach // p.r + 2):
            for M in range(reach // p.s + 2):
                base = cell_exponent(Q, N, M, p)
                if base > weight_cap:
                    continue
                extra_cap = (weight_cap - base) // unit
                for ex in range(extra_cap + 1):
                    for ey in range(extra_cap - ex + 1):
                        for lx in _bounded_partitions(ex, N):
                            x = tuple(v + M + chi for v in lx + (0,) * (N - len(lx)))
                            for ly in _bounded_partitions(ey, M):
                                y = ly + (0,) * (M - len(ly))
                                lab = SpectralLabel(N, M, Q, x + y)
                                out.append((base + unit * (ex + ey), lab))
    out.sort(key=lambda t: (t[0], t[1].Q, t[1].N, t[1].M, t[1].n))
    return [lab for _, lab in out]


def labels_in_sector(p: ModelParams, Q_final: int, d: int, window=None) -> list:
    """Admissible labels whose state lies in charge ``Q_final`` and degree ``d``."""
    cap = Q_final * Q_final + 2 * p.disc * d
    return [lab for lab in enumerate_admissible(p, cap, window)
            if lab.final_charge(p) == Q_final and lab.degree == d]



def admissible_labels(p: ModelParams, max_particles: int, max_degree: int, window=None) -> list:
    """Admissible labels with ``N + M <= max_particles`` and ``|n| <= max_degree``."""
    lo, hi = window if window is not None else admissible_window(p)
    out = []
    for Q in range(lo, hi + 1):
        chi = 1 if Q > 0 else 0
        for N in range(max_particles + 1):
            for M in range(max_particles - N + 1):
                base = N * (M + chi)
                for extra in range(max_degree - base + 1):
                    for ex in range(extra + 1):
                        for lx in _bounded_partitions(ex, N):
                            x = tuple(v + M + chi for v in lx + (0,) * (N - len(lx)))
                            for ly in _bounded_partitions(extra - ex, M):
                                out.append(SpectralLabel(N, M, Q, x + ly + (0,) * (M - len(ly))))
    out.sort(key=lambda lab: (lab.degree, lab.Q, lab.N, lab.M, lab.n))
    return out
