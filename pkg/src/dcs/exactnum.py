"""Exact scalars.

Three number types are used throughout:

* ``Rat`` is :class:`fractions.Fraction`.
* :class:`RatFuncG` is a univariate rational function in the coupling ``g``
  with rational coefficients, kept in canonical form (coprime numerator and
  denominator, monic denominator).
* :class:`QuadScalar` is an element ``a + b*t`` of the real quadratic field
  ``Q(t)`` with ``t**2 = r*s``.  The statistics parameters live here:
  ``nu = t/s``, ``nu0 = t/(r*s)`` and ``-1/nu = -t/r``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt

Rat = Fraction


class PoleAtCoupling(ZeroDivisionError):
    """Raised when a rational function is specialized at one of its poles."""


def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def rat_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# --- dense univariate polynomials: tuples of Fractions, lowest degree first ---

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = list(_trim(a))
    return _trim(q), tuple(a)


def _pmonic(a):
    return _pscale(a, 1 / a[-1]) if a else ()


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _peval(a, x):
    acc = Fraction(0) if not isinstance(x, float) else 0.0
    for c in reversed(a):
        acc = acc * x + c
    return acc


class RatFuncG:
    """Rational function of ``g`` over Q in lowest terms with monic denominator.

    >>> G = RatFuncG.var()
    >>> (G - 1) / (G + 1) * (G + 1)
    RatFuncG(g - 1)
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(1,), _canonical=False):
        num = _trim(rat(x) for x in num)
        den = _trim(rat(x) for x in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _canonical:
            if not num:
                den = (Fraction(1),)
            elif len(den) > 1:
                d = _pgcd(num, den)
                if len(d) > 1:
                    num = _pdivmod(num, d)[0]
                    den = _pdivmod(den, d)[0]
            lead = den[-1]
            if lead != 1:
                num = _pscale(num, 1 / lead)
                den = _pscale(den, 1 / lead)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def const(cls, c) -> "RatFuncG":
        c = rat(c)
        return cls((c,) if c else (), (Fraction(1),), _canonical=True)

    @classmethod
    def var(cls) -> "RatFuncG":
        return cls((Fraction(0), Fraction(1)), (Fraction(1),), _canonical=True)

    @staticmethod
    def _lift(x) -> "RatFuncG":
        if isinstance(x, RatFuncG):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFuncG.const(x)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.num

    def is_const(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFuncG(_padd(self.num, o.num), self.den)
        return RatFuncG(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
                        _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFuncG(_pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if len(self.den) == 1 and len(o.den) == 1:
            return RatFuncG(_pmul(self.num, o.num), (Fraction(1),), _canonical=True)
        return RatFuncG(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFuncG":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFuncG(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFuncG.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __call__(self, x):
        """Evaluate at ``x`` (Fraction, int or float)."""
        d = _peval(self.den, x)
        if d == 0:
            raise PoleAtCoupling(f"denominator vanishes at g = {x}")
        return _peval(self.num, x) / d

    def __repr__(self):
        if len(self.den) == 1:
            return f"RatFuncG({_pstr(self.num)})"
        return f"RatFuncG(({_pstr(self.num)})/({_pstr(self.den)}))"

    def to_json(self) -> dict:
        return {"num": [rat_str(c) for c in self.num],
                "den": [rat_str(c) for c in self.den]}

    @classmethod
    def from_json(cls, d) -> "RatFuncG":
        return cls([Fraction(c) for c in d["num"]], [Fraction(c) for c in d["den"]])


def _pstr(a) -> str:
    if not a:
        return "0"
    terms = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
        if mono and c == 1:
            terms.append(mono)
        elif mono and c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}{'*' + mono if mono else ''}")
    return " + ".join(reversed(terms)).replace("+ -", "- ")


def specialize_g(f, p: "ModelParams") -> Fraction:
    """Substitute ``g = r/s`` exactly; raises PoleAtCoupling at a pole."""
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    return f(p.g)


# --- the quadratic field Q(sqrt(d)) ---

class QuadScalar:
    """Element ``a + b*t`` with ``t = +sqrt(d)``, ``d = r*s``.

    When ``d`` is a perfect square ``t`` is rational and is folded into
    ``a``; the field then degenerates to Q and ``b`` stays zero.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1):
        a = a if isinstance(a, Fraction) else Fraction(a)
        b = b if isinstance(b, Fraction) else Fraction(b)
        if b and _is_square(d):
            a += b * isqrt(d)
            b = Fraction(0)
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def _raw(cls, a, b, d):
        x = object.__new__(cls)
        x.a = a
        x.b = b
        x.d = d
        return x

    def _coerce(self, other):
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt({self.d})) and Q(sqrt({other.d}))")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadScalar._raw(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return not self.b

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar._raw(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar._raw(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar._raw(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadScalar._raw(self.a * other, self.b * other, self.d)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.b and not o.b:
            return QuadScalar._raw(self.a * o.a, self.b, self.d)
        return QuadScalar._raw(self.a * o.a + self.d * self.b * o.b,
                               self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conj(self) -> "QuadScalar":
        return QuadScalar._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt(rs))")
        return QuadScalar._raw(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadScalar._raw(self.a / other, self.b / other, self.d)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadScalar._raw(Fraction(1), Fraction(0), self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        if not self.b:
            return f"QuadScalar({self.a})"
        return f"QuadScalar({self.a} + {self.b}*sqrt({self.d}))"

    def to_json(self) -> dict:
        return {"a": rat_str(self.a), "b": rat_str(self.b)}

    @classmethod
    def from_json(cls, obj, d: int) -> "QuadScalar":
        return cls(Fraction(obj["a"]), Fraction(obj["b"]), d)


def _is_square(d: int) -> bool:
    return d >= 0 and isqrt(d) ** 2 == d


@dataclass(frozen=True)
class ModelParams:
    """Coupling data: positive integers ``r, s`` with ``g = nu**2 = r/s``.

    ``disc = r*s`` fixes the field; ``nu0 = 1/sqrt(rs)`` is symmetric in
    ``(r, s)`` while ``nu = sqrt(r/s)`` and ``-1/nu`` swap under ``r <-> s``.
    """

    r: int
    s: int
    coprime: bool = False

    def __post_init__(self):
        if not (isinstance(self.r, int) and isinstance(self.s, int)):
            raise TypeError("r and s must be integers")
        if self.r < 1 or self.s < 1:
            raise ValueError("r and s must be positive")
        if self.coprime and gcd(self.r, self.s) != 1:
            raise ValueError(f"r={self.r}, s={self.s} are not coprime")

    @property
    def g(self) -> Fraction:
        return Fraction(self.r, self.s)

    @property
    def disc(self) -> int:
        return self.r * self.s

    def scalar(self, a=0, b=0) -> QuadScalar:
        return QuadScalar(a, b, self.disc)

    @cached_property
    def t(self) -> QuadScalar:
        return QuadScalar(0, 1, self.disc)

    @cached_property
    def nu(self) -> QuadScalar:
        return self.t / self.s

    @cached_property
    def nu0(self) -> QuadScalar:
        return self.t / self.disc

    @cached_property
    def nu_dual(self) -> QuadScalar:
        """The dual statistics parameter ``-1/nu``."""
        return -self.t / self.r

    def kappa(self, charge: int) -> QuadScalar:
        """Statistics parameter ``charge * nu0`` of a vertex operator shifting Q by ``charge``."""
        return self.nu0 * charge

    def swapped(self) -> "ModelParams":
        return ModelParams(self.s, self.r, self.coprime)

    def to_json(self) -> dict:
        return {"r": self.r, "s": self.s}
