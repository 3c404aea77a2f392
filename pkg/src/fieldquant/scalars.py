"""Exact complex-rational scalars.

``CQ`` is a Gaussian rational ``re + i*im`` with ``fractions.Fraction``
parts.  It mixes freely with ``int`` and ``Fraction`` operands.  Floats are
rejected on purpose: every quantity routed through the algebra must stay
exact so that Gram inertia can be decided without tolerances.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["CQ", "ZERO", "ONE", "I", "as_cq", "as_fraction", "parse_rational", "format_rational"]

RationalLike = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    """Coerce an exact real (int, Fraction, rational string) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, CQ):
        if x.im:
            raise ValueError(f"{x} is not real")
        return x.re
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def parse_rational(s: str) -> Fraction:
    """Parse ``"p/q"``, ``"-3"`` or a terminating decimal ``"0.25"``."""
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {s!r}") from exc


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class CQ:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    # construction helpers -------------------------------------------------
    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "CQ":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return CQ._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return CQ._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return CQ._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not o.im:
            return CQ._raw(self.re * o.re, self.im * o.re)
        if not self.im:
            return CQ._raw(self.re * o.re, self.re * o.im)
        return CQ._raw(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __neg__(self):
        return CQ._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self.inverse()) ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "CQ":
        d = self.re * self.re + self.im * self.im
        if not d:
            raise ZeroDivisionError("CQ division by zero")
        return CQ._raw(self.re / d, -self.im / d)

    def conj(self) -> "CQ":
        return CQ._raw(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    # comparisons ----------------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # conversions ----------------------------------------------------------
    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"CQ({format_rational(self.re)}, {format_rational(self.im)})"

    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return f"{format_rational(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"

    def to_pair(self) -> list[str]:
        return [format_rational(self.re), format_rational(self.im)]


def _coerce(x):
    if isinstance(x, CQ):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return CQ._raw(Fraction(x), Fraction(0))
    return NotImplemented


def as_cq(x) -> CQ:
    """Coerce ints, Fractions, rational strings or ``[re, im]`` pairs."""
    if isinstance(x, CQ):
        return x
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ValueError(f"complex pair must have two entries, got {x!r}")
        return CQ(as_fraction(x[0]), as_fraction(x[1]))
    return CQ(as_fraction(x))


ZERO = CQ(0)
ONE = CQ(1)
I = CQ(0, 1)
