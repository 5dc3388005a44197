"""Exact real scalars: rationals and elements of a real quadratic field.

An :class:`ExactScalar` stores ``(a + b*sqrt(d)) / c`` with integers
``a, b, c`` (``c > 0``, ``gcd(a, b, c) == 1``) and a square-free ``d > 1``.
Rationals are the elements with ``b == 0``; they carry ``d == 0`` and mix
freely with every field.  Two irrational scalars from different fields
cannot be combined.

>>> from heartwood.scalars import golden
>>> alpha = golden()
>>> alpha * alpha + alpha == 1
True
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction

from .errors import InputError, ScalarContextError

__all__ = ["ExactScalar", "as_scalar", "golden", "sqrt", "parse_scalar", "scalar_to_json"]


def _squarefree(d):
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


class ExactScalar:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, value=0):
        if isinstance(value, ExactScalar):
            self.a, self.b, self.c, self.d = value.a, value.b, value.c, value.d
            return
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, bool) or not isinstance(value, (numbers.Rational,)):
            raise TypeError(f"cannot build an exact scalar from {value!r}")
        q = Fraction(value)
        self.a, self.b, self.c, self.d = q.numerator, 0, q.denominator, 0

    @classmethod
    def _raw(cls, a, b, c, d):
        if c < 0:
            a, b, c = -a, -b, -c
        if b == 0:
            d = 0
            g = math.gcd(a, c)
        else:
            g = math.gcd(math.gcd(a, b), c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        obj = object.__new__(cls)
        obj.a, obj.b, obj.c, obj.d = a, b, c, d
        return obj

    @classmethod
    def quadratic(cls, a, b, d):
        """Return ``a + b*sqrt(d)`` for rationals ``a``, ``b``."""
        a, b = Fraction(a), Fraction(b)
        if b and not _squarefree(d):
            raise InputError(f"d={d} must be a square-free integer > 1")
        c = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        return cls._raw(a.numerator * (c // a.denominator), b.numerator * (c // b.denominator), c, d)

    # --- field access -------------------------------------------------
    @property
    def rational_part(self):
        return Fraction(self.a, self.c)

    @property
    def irrational_part(self):
        return Fraction(self.b, self.c)

    def is_rational(self):
        return self.b == 0

    # --- arithmetic ---------------------------------------------------
    def _field(self, other):
        if self.d and other.d and self.d != other.d:
            raise ScalarContextError(f"cannot mix Q(sqrt {self.d}) with Q(sqrt {other.d})")
        return self.d or other.d

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d = self._field(other)
        return ExactScalar._raw(
            self.a * other.c + other.a * self.c, self.b * other.c + other.b * self.c, self.c * other.c, d
        )

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw(-self.a, -self.b, self.c, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d = self._field(other)
        a = self.a * other.a + self.b * other.b * d
        b = self.a * other.b + self.b * other.a
        return ExactScalar._raw(a, b, self.c * other.c, d)

    __rmul__ = __mul__

    def _inverse(self):
        if self.a == 0 and self.b == 0:
            raise ZeroDivisionError("division by an exact zero")
        norm = self.a * self.a - self.b * self.b * self.d
        return ExactScalar._raw(self.c * self.a, -self.c * self.b, norm, self.d)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other._inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self._inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self._inverse() ** (-n)
        result, base = ExactScalar(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # --- ordering -----------------------------------------------------
    def sign(self):
        """Sign of the number, decided exactly."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a >= 0 and b > 0:
            return 1
        if a <= 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d
        diff = a * a - b * b * self.d
        return (diff > 0) - (diff < 0) if a > 0 else (diff < 0) - (diff > 0)

    def _cmp(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return None
        return (self - other).sign()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.c == other.c and (self.b == 0 or self.d == other.d)

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    def __lt__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s < 0

    def __le__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s <= 0

    def __gt__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s > 0

    def __ge__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s >= 0

    def __bool__(self):
        return bool(self.a or self.b)

    def __float__(self):
        return (self.a + self.b * math.sqrt(self.d)) / self.c if self.b else self.a / self.c

    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        r = str(self.rational_part)
        if self.b == 0:
            return r
        s = self.irrational_part
        coeff = "" if abs(s) == 1 else f"{abs(s)}*"
        sign = "-" if s < 0 else "+"
        if self.a == 0:
            return f"{'-' if s < 0 else ''}{coeff}sqrt({self.d})"
        return f"{r} {sign} {coeff}sqrt({self.d})"


def _coerce(x):
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, numbers.Rational) and not isinstance(x, bool):
        return ExactScalar(x)
    return NotImplemented


def as_scalar(x):
    """Coerce ints, Fractions, ``"p/q"`` strings and scalars to :class:`ExactScalar`."""
    if isinstance(x, ExactScalar):
        return x
    return ExactScalar(x)


def sqrt(d):
    """The positive square root of a square-free integer ``d``."""
    return ExactScalar.quadratic(0, 1, d)


def golden():
    """alpha = (sqrt 5 - 1) / 2, the positive root of x^2 + x - 1."""
    return ExactScalar.quadratic(Fraction(-1, 2), Fraction(1, 2), 5)


def parse_scalar(obj, d=None, location=None):
    """Parse ``"p/q"`` or ``{"a": "p/q", "b": "r/s"}`` (meaning a + b*sqrt d)."""
    from .errors import FormatError

    try:
        if isinstance(obj, str):
            return ExactScalar(Fraction(obj))
        if isinstance(obj, int) and not isinstance(obj, bool):
            return ExactScalar(obj)
        if isinstance(obj, dict) and set(obj) <= {"a", "b"} and "a" in obj:
            a = Fraction(str(obj["a"]))
            b = Fraction(str(obj.get("b", "0")))
            if b and d is None:
                raise FormatError("irrational scalar in a rational context", location)
            return ExactScalar.quadratic(a, b, d or 0)
    except FormatError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad scalar {obj!r}: {exc}", location) from None
    raise FormatError(f"bad scalar {obj!r}", location)


def scalar_to_json(x):
    x = as_scalar(x)
    if x.is_rational():
        return str(x.rational_part) if x.c != 1 else f"{x.a}/1"
    return {"a": str(x.rational_part), "b": str(x.irrational_part)}
