"""Exact Gaussian rationals: a + b*i with a, b in Q."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union[int, Fraction, "GaussianRational"]

_TOKEN = r"[+-]?\d+(?:/\d+)?"
_PATTERN = re.compile(
    rf"^\s*(?:(?P<re>{_TOKEN})(?P<im1>[+-]\d+(?:/\d+)?)i"
    rf"|(?P<im2>{_TOKEN})i|(?P<im3>[+-]?)i|(?P<re2>{_TOKEN}))\s*$"
)


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" exactly. Floats and decimals are rejected."""
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    if not re.fullmatch(r"\s*[+-]?\d+(?:/\d+)?\s*", text):
        raise ValueError(f"malformed rational {text!r}")
    value = Fraction(text.strip())
    return value


class GaussianRational:
    """Immutable exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        if type(re) is not Fraction:
            re = Fraction(re)
        if type(im) is not Fraction:
            im = Fraction(im)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x: Number) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x))
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Inverse of ``str``: accepts "3/2", "-1/2i", "1+2/3i", "i"."""
        m = _PATTERN.match(text)
        if not m:
            raise ValueError(f"malformed Gaussian rational {text!r}")
        if m.group("re2") is not None:
            return cls(Fraction(m.group("re2")))
        if m.group("im2") is not None:
            return cls(0, Fraction(m.group("im2")))
        if m.group("im3") is not None:
            return cls(0, -1 if m.group("im3") == "-" else 1)
        return cls(Fraction(m.group("re")), Fraction(m.group("im1")))

    # arithmetic

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            if not other.im:
                if not self.im:
                    return GaussianRational(self.re * other.re)
                return GaussianRational(self.re * other.re, self.im * other.re)
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        d = self.norm2()
        if not d:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / d, -self.im / d)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(k)):
            result = result * base
        return result

    # comparison / conversion

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
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

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return not self.im

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self):
        return f"GaussianRational({self})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def i_power(k: int) -> GaussianRational:
    """(sqrt(-1))**k for any integer k."""
    return (ONE, I, -ONE, -I)[k % 4]
