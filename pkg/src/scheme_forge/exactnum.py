"""Exact scalars: rationals and elements of a single real quadratic field Q(sqrt d).

A :class:`Scalar` is ``a + b*sqrt(d)`` with ``a, b`` rational and ``d`` a
squarefree integer > 1 (or ``d == 0`` when ``b == 0``).  Values are kept in
canonical form after every operation, so exact zero tests are trivial.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from sympy import factorint

from .errors import DivisionByZero, MixedDiscriminants, ParseError

__all__ = ["Scalar", "sqrt_integer", "squarefree_decomposition", "compare", "parse_scalar", "as_scalar"]


@lru_cache(maxsize=4096)
def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(c, d)`` with ``n == c*c*d`` and ``d`` squarefree."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 0, 1
    r = math.isqrt(n)
    if r * r == n:
        return r, 1
    c, d = 1, 1
    for p, e in factorint(n).items():
        c *= p ** (e // 2)
        if e % 2:
            d *= p
    return c, d


class Scalar:
    """Immutable exact number ``a + b*sqrt(d)``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if b and d <= 0:
            raise ValueError("radical part needs a positive discriminant")
        if b:
            c, d = squarefree_decomposition(d)
            if d == 1:
                a, b, d = a + b * c, Fraction(0), 0
            else:
                b *= c
        if not b:
            b, d = Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> "Scalar":
        # a, b, d already canonical
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "d", d)
        return obj

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_rational(self) -> bool:
        return not self.b

    def is_integer(self) -> bool:
        return not self.b and self.a.denominator == 1

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def sign(self) -> int:
        a, b = self.a, self.b
        if not b:
            return (a > 0) - (a < 0)
        sb = 1 if b > 0 else -1
        if not a or (a > 0) == (b > 0):
            return sb
        # opposite signs: larger magnitude wins; equality impossible (d squarefree > 1)
        return (1 if a > 0 else -1) if a * a > b * b * self.d else sb

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _join(x: "Scalar", y: "Scalar") -> int:
        if x.d == y.d or not y.d:
            return x.d
        if not x.d:
            return y.d
        raise MixedDiscriminants(f"cannot combine sqrt({x.d}) with sqrt({y.d})")

    def __add__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        d = Scalar._join(self, other)
        b = self.b + other.b
        return Scalar._raw(self.a + other.a, b, d if b else 0)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if not self.b and not other.b:
            return Scalar._raw(self.a * other.a, Fraction(0), 0)
        d = Scalar._join(self, other)
        a = self.a * other.a + self.b * other.b * d
        b = self.a * other.b + self.b * other.a
        return Scalar._raw(a, b, d if b else 0)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("division by exact zero")
        if not self.b:
            return Scalar._raw(1 / self.a, Fraction(0), 0)
        nrm = self.norm()
        return Scalar._raw(self.a / nrm, -self.b / nrm, self.d)

    def __truediv__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if not other.b and other.a:
            return Scalar._raw(self.a / other.a, self.b / other.a, self.d)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        # display only
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    # -- text -------------------------------------------------------------
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar('{self}')"


ZERO = Scalar._raw(Fraction(0), Fraction(0), 0)
ONE = Scalar._raw(Fraction(1), Fraction(0), 0)


def as_scalar(x, strict: bool = True):
    """Coerce ints, Fractions and scalar strings to :class:`Scalar`."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Scalar._raw(Fraction(x), Fraction(0), 0)
    if isinstance(x, bool):
        return Scalar._raw(Fraction(int(x)), Fraction(0), 0)
    if isinstance(x, str):
        return parse_scalar(x)
    if strict:
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
    return NotImplemented


def sqrt_integer(n: int) -> Scalar:
    """Exact square root of a nonnegative integer."""
    if n < 0:
        raise ValueError("sqrt_integer needs n >= 0")
    c, d = squarefree_decomposition(n)
    if d == 1:
        return Scalar(c)
    return Scalar._raw(Fraction(0), Fraction(c), d)


def sqrt_rational(x) -> Scalar:
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    # sqrt(p/q) = sqrt(p*q)/q
    return sqrt_integer(x.numerator * x.denominator) / x.denominator


def compare(a, b) -> int:
    """Return -1, 0 or 1 according to the real embedding with sqrt(d) > 0."""
    return (as_scalar(a) - as_scalar(b)).sign()


# -- text encoding ---------------------------------------------------------

def _fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(x: Scalar) -> str:
    if not x.b:
        return _fmt_rational(x.a)
    rad = f"{_fmt_rational(abs(x.b))}*sqrt({x.d})"
    if not x.a:
        return rad if x.b > 0 else "-" + rad
    return f"{_fmt_rational(x.a)}{'+' if x.b > 0 else '-'}{rad}"


_RAT = r"\d+(?:/\d+)?"
_RADICAL = rf"(?:(?P<b>{_RAT})\*)?sqrt\((?P<d>\d+)\)"
# "a", "a+b*sqrt(d)", or a bare signed radical "b*sqrt(d)"
_SCALAR_RE = re.compile(rf"^(?P<a>[+-]?{_RAT})(?:(?P<sign>[+-]){_RADICAL})?$")
_RADICAL_RE = re.compile(rf"^(?P<sign>[+-]?){_RADICAL}$")


def parse_scalar(text: str) -> Scalar:
    s = text.replace(" ", "")
    m = _SCALAR_RE.match(s) or _RADICAL_RE.match(s)
    if not m:
        raise ParseError(f"malformed scalar {text!r}")
    groups = m.groupdict()
    try:
        a = Fraction(groups["a"]) if groups.get("a") else Fraction(0)
        if groups["d"] is None:
            return Scalar(a)
        b = Fraction(groups["b"]) if groups["b"] else Fraction(1)
    except ZeroDivisionError as exc:
        raise ParseError(f"zero denominator in {text!r}") from exc
    if groups["sign"] == "-":
        b = -b
    return Scalar(a) + b * sqrt_integer(int(groups["d"]))
