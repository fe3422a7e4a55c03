"""Exact scalars in Q and Q(i).

A :class:`Scalar` stores ``(a + b*i) / d`` as three Python integers with
``d > 0`` and ``gcd(a, b, d) == 1``.  Rationals are the ``b == 0`` case, so the
two fields share a single type; :class:`Field` only matters where an answer
depends on the field (root finding, parsing).
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from math import gcd

from .errors import ParseError


class Field(enum.Enum):
    Q = "Q"
    QI = "Qi"

    @classmethod
    def parse(cls, text: str) -> "Field":
        for f in cls:
            if f.value.lower() == str(text).strip().lower():
                return f
        raise ParseError(f"unknown field {text!r}; expected 'Q' or 'Qi'")

    def contains(self, value: "Scalar") -> bool:
        return self is Field.QI or value.is_rational()


class Scalar:
    __slots__ = ("_a", "_b", "_d", "_hash")

    def __init__(self, re_part=0, im_part=0):
        # accepts ints, Fractions or Scalars for either part
        if isinstance(re_part, Scalar) and im_part == 0:
            self._a, self._b, self._d = re_part._a, re_part._b, re_part._d
            self._hash = None
            return
        r = Fraction(re_part)
        i = Fraction(im_part)
        d = r.denominator * i.denominator // gcd(r.denominator, i.denominator)
        self._set(r.numerator * (d // r.denominator), i.numerator * (d // i.denominator), d)

    def _set(self, a: int, b: int, d: int) -> None:
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d)
        if g != 1:
            a, b, d = a // g, b // g, d // g
        self._a, self._b, self._d = a, b, d
        self._hash = None

    @classmethod
    def _make(cls, a: int, b: int, d: int) -> "Scalar":
        s = object.__new__(cls)
        s._set(a, b, d)
        return s

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, int):
            return cls._make(value, 0, 1)
        if isinstance(value, Fraction):
            return cls._make(value.numerator, 0, value.denominator)
        if isinstance(value, complex):
            raise TypeError("floating-point complex values are not exact")
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    @classmethod
    def i(cls) -> "Scalar":
        return cls._make(0, 1, 1)

    # -- accessors -------------------------------------------------------
    @property
    def real(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def imag(self) -> Fraction:
        return Fraction(self._b, self._d)

    @property
    def parts(self) -> tuple[int, int, int]:
        return self._a, self._b, self._d

    def is_rational(self) -> bool:
        return self._b == 0

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def conjugate(self) -> "Scalar":
        return Scalar._make(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.real, self.imag)

    # -- arithmetic ------------------------------------------------------
    def __bool__(self) -> bool:
        return not (self._a == 0 and self._b == 0)

    def __neg__(self) -> "Scalar":
        return Scalar._make(-self._a, -self._b, self._d)

    def __pos__(self) -> "Scalar":
        return self

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar.coerce(other)
            else:
                return NotImplemented
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        if d == f:
            return Scalar._make(a + c, b + e, d)
        return Scalar._make(a * f + c * d, b * f + e * d, d * f)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar.coerce(other)
            else:
                return NotImplemented
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        if d == f:
            return Scalar._make(a - c, b - e, d)
        return Scalar._make(a * f - c * d, b * f - e * d, d * f)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar.coerce(other) - self
        return NotImplemented

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                return Scalar._make(self._a * other, self._b * other, self._d)
            if isinstance(other, Fraction):
                other = Scalar.coerce(other)
            else:
                return NotImplemented
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        if b == 0 and e == 0:
            return Scalar._make(a * c, 0, d * f)
        return Scalar._make(a * c - b * e, a * e + b * c, d * f)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        a, b, d = self._a, self._b, self._d
        if a == 0 and b == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        n = a * a + b * b
        # d / (a + b i) = d (a - b i) / n
        return Scalar._make(d * a, -d * b, n)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar.coerce(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar.coerce(other) * self.inverse()
        return NotImplemented

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and Fraction(self._a, self._d) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self._b == 0:
                self._hash = hash(Fraction(self._a, self._d))
            else:
                self._hash = hash((self._a, self._b, self._d))
        return self._hash

    # -- formatting ------------------------------------------------------
    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"


ZERO = Scalar._make(0, 0, 1)
ONE = Scalar._make(1, 0, 1)
I = Scalar._make(0, 1, 1)


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Canonical text: ``p/q``, ``p/q+r/si`` or ``r/si``."""
    re_part, im_part = s.real, s.imag
    if im_part == 0:
        return _fmt_fraction(re_part)
    im = ("" if abs(im_part) == 1 else _fmt_fraction(abs(im_part))) + "i"
    if re_part == 0:
        return ("-" if im_part < 0 else "") + im
    return _fmt_fraction(re_part) + ("-" if im_part < 0 else "+") + im


_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_rat(text: str, whole: str) -> Fraction:
    if not _RAT_RE.match(text):
        raise ParseError(f"cannot parse scalar {whole!r}: bad token {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ParseError(f"zero denominator in {whole!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def parse_scalar(text) -> Scalar:
    """Parse the exact text format used by model files.

    >>> parse_scalar("-3/4")
    Scalar('-3/4')
    >>> parse_scalar("1/2-3i")
    Scalar('1/2-3i')
    """
    if isinstance(text, int) and not isinstance(text, bool):
        return Scalar.coerce(text)
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string or integer, got {text!r}")
    t = text.replace(" ", "")
    if not t:
        raise ParseError("empty scalar")
    if not t.endswith("i"):
        return Scalar(_parse_rat(t, text))
    body = t[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0:
        re_text, im_text = body[:cut], body[cut:]
    else:
        re_text, im_text = "", body
    if im_text in ("", "+", "-"):
        im_text += "1"
    re_part = _parse_rat(re_text, text) if re_text else Fraction(0)
    return Scalar(re_part, _parse_rat(im_text, text))
