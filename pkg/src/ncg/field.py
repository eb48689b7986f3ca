"""Exact base fields: the rationals Q and the Gaussian rationals Q(i).

Rationals are plain :class:`fractions.Fraction`.  Gaussian rationals use
:class:`GaussianRational`, stored as ``(re + im*i) / den`` over integers in
lowest terms, which keeps arithmetic cheap inside elimination loops.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Union


class GaussianRational:
    """Element ``(a + b i) / d`` of Q(i) with ``d > 0`` and ``gcd(a, b, d) == 1``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=1):
        if isinstance(a, GaussianRational):
            self.a, self.b, self.d = a.a, a.b, a.d
            return
        if not (type(a) is int and type(b) is int and type(d) is int):
            fa, fb, fd = Fraction(a), Fraction(b), Fraction(d)
            if fd == 0:
                raise ZeroDivisionError("GaussianRational with zero denominator")
            fa, fb = fa / fd, fb / fd
            den = fa.denominator * fb.denominator // gcd(fa.denominator, fb.denominator)
            a = fa.numerator * (den // fa.denominator)
            b = fb.numerator * (den // fb.denominator)
            d = den
        if d == 0:
            raise ZeroDivisionError("GaussianRational with zero denominator")
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d)
        if g != 1:
            a, b, d = a // g, b // g, d // g
        self.a, self.b, self.d = a, b, d

    @classmethod
    def _raw(cls, a, b, d):
        # caller guarantees d > 0; only reduces
        g = gcd(a, b, d)
        obj = object.__new__(cls)
        if g != 1:
            a, b, d = a // g, b // g, d // g
        obj.a, obj.b, obj.d = a, b, d
        return obj

    @property
    def real(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def imag(self) -> Fraction:
        return Fraction(self.b, self.d)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.a, -self.b, self.d)

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if type(other) is int:
            return GaussianRational._raw(other, 0, 1)
        if isinstance(other, Fraction):
            return GaussianRational._raw(other.numerator, 0, other.denominator)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.d == o.d:
            return GaussianRational._raw(self.a + o.a, self.b + o.b, self.d)
        return GaussianRational._raw(
            self.a * o.d + o.a * self.d, self.b * o.d + o.b * self.d, self.d * o.d
        )

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational._raw(
            self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a, self.d * o.d
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        norm = o.a * o.a + o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        # (a + bi)/d / ((c + ei)/f) = (a + bi)(c - ei) f / (d (c^2 + e^2))
        return GaussianRational._raw(
            (self.a * o.a + self.b * o.b) * o.d,
            (self.b * o.a - self.a * o.b) * o.d,
            self.d * norm,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"


Scalar = Union[Fraction, GaussianRational]

_RAT = r"[+-]?\d+(?:/\d+)?"
_GAUSS_RE = re.compile(rf"^\s*({_RAT})\s*([+-])\s*(\d+(?:/\d+)?)\s*\*\s*i\s*$")
_PURE_IMAG_RE = re.compile(rf"^\s*({_RAT})\s*\*\s*i\s*$")


def conj(x):
    """Complex conjugate; the identity on rationals."""
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def format_scalar(x) -> str:
    if isinstance(x, GaussianRational):
        re_part, im_part = x.real, x.imag
        sign = "-" if im_part < 0 else "+"
        return f"{re_part}{sign}{abs(im_part)}*i"
    return str(Fraction(x))


class Field:
    """One of the two exact base fields, identified by ``name`` ("Q" or "Qi")."""

    def __init__(self, name: str):
        if name not in ("Q", "Qi"):
            raise ValueError(f"unknown field {name!r}; expected 'Q' or 'Qi'")
        self.name = name
        self.is_complex = name == "Qi"
        self.zero = self(0)
        self.one = self(1)

    def __call__(self, x) -> Scalar:
        if self.is_complex:
            if isinstance(x, GaussianRational):
                return x
            if isinstance(x, complex):
                raise TypeError("refusing to convert a float complex to an exact scalar")
            return GaussianRational(x)
        if isinstance(x, GaussianRational):
            if x.b != 0:
                raise ValueError(f"{format_scalar(x)} is not rational")
            return Fraction(x.a, x.d)
        if isinstance(x, float):
            raise TypeError("refusing to convert a float to an exact scalar")
        return Fraction(x)

    @property
    def i(self) -> GaussianRational:
        if not self.is_complex:
            raise ValueError("Q has no imaginary unit")
        return GaussianRational(0, 1)

    def parse(self, text) -> Scalar:
        """Parse ``"p/q"`` or ``"p/q+r/s*i"``; integers and ints are also accepted."""
        if isinstance(text, int):
            return self(text)
        s = str(text).strip()
        m = _GAUSS_RE.match(s)
        if m:
            re_part = Fraction(m.group(1))
            im_part = Fraction(m.group(3))
            if m.group(2) == "-":
                im_part = -im_part
            return self(GaussianRational(re_part, im_part))
        m = _PURE_IMAG_RE.match(s)
        if m:
            return self(GaussianRational(0, Fraction(m.group(1))))
        try:
            return self(Fraction(s))
        except ValueError:
            raise ValueError(f"cannot parse scalar {text!r}") from None

    def format(self, x) -> str:
        return format_scalar(self(x))

    def __eq__(self, other):
        return isinstance(other, Field) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"Field({self.name!r})"


QQ = Field("Q")
QQI = Field("Qi")


def field(name: str) -> Field:
    return QQI if name == "Qi" else QQ if name == "Q" else Field(name)
