"""Exact arithmetic in a real quadratic field Q(sqrt(D))."""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt

__all__ = ["QuadraticNumber", "squarefree_split", "parse_exact", "format_exact"]


def squarefree_split(n):
    """Write a positive integer ``n`` as ``f**2 * d`` with ``d`` squarefree."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    f, d = 1, 1
    p = 2
    m = n
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        f *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    d *= m
    return f, d


class QuadraticNumber:
    """``a + b*sqrt(D)`` with rational ``a, b`` and squarefree ``D > 1``.

    ``sqrt(D)`` denotes the positive real root, so each element also has a
    definite real value.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b, D):
        if D <= 1 or squarefree_split(D)[0] != 1:
            raise ValueError(f"D must be a squarefree integer > 1, got {D}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.D = D

    @staticmethod
    def make(a, b, D):
        """Like the constructor but collapses to a rational when ``b == 0``."""
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            return a.numerator if a.denominator == 1 else a
        return QuadraticNumber(a, b, D)

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.D != self.D:
                raise ValueError("elements of different quadratic fields")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber.make(self.a + o[0], self.b + o[1], self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.D)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber.make(self.a - o[0], self.b - o[1], self.D)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c, d = o
        return QuadraticNumber.make(
            self.a * c + self.b * d * self.D, self.a * d + self.b * c, self.D
        )

    __rmul__ = __mul__

    def norm(self):
        return self.a * self.a - self.b * self.b * self.D

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber.make(self.a / other, self.b / other, self.D)
        if isinstance(other, QuadraticNumber):
            return self * other.conjugate() / other.norm()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.conjugate() * Fraction(other) / self.norm()
        return NotImplemented

    def conjugate(self):
        return QuadraticNumber(self.a, -self.b, self.D)

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self.a, self.b, self.D) == (other.a, other.b, other.D)
        if isinstance(other, (int, Fraction)):
            return False  # b != 0 by construction through make(); see __init__
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.D))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * self.D**0.5

    def sign(self):
        """Exact sign of the real value."""
        # a + b sqrt(D) > 0  <=>  compare a and -b sqrt(D) via squares
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return (self.b > 0) - (self.b < 0)
        if (self.a > 0) == (self.b > 0):
            return 1 if self.a > 0 else -1
        # opposite signs: the larger square wins
        lhs, rhs = self.a * self.a, self.b * self.b * self.D
        if lhs == rhs:
            return 0
        big = self.a if lhs > rhs else self.b
        return 1 if big > 0 else -1

    def abs_upper(self, bits=64):
        """A rational upper bound for ``|a + b*sqrt(D)|``."""
        scale = 1 << bits
        lo = Fraction(isqrt(self.D * scale * scale), scale)
        hi = lo + Fraction(1, scale)
        return max(abs(self.a + self.b * lo), abs(self.a + self.b * hi))

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, {self.D})"

    def __str__(self):
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*sqrt({self.D})"


_QUAD_RE = re.compile(r"^\s*(-?\d+(?:/\d+)?)([+-])(\d+(?:/\d+)?)\*sqrt\((\d+)\)\s*$")


def format_exact(c):
    """Text form of an exact coefficient (round-trips through :func:`parse_exact`)."""
    if isinstance(c, QuadraticNumber):
        return str(c)
    return str(Fraction(c))


def parse_exact(text):
    m = _QUAD_RE.match(text)
    if m:
        a, sign, b, D = m.groups()
        b = Fraction(b) if sign == "+" else -Fraction(b)
        return QuadraticNumber.make(Fraction(a), b, int(D))
    v = Fraction(text.strip())
    return v.numerator if v.denominator == 1 else v
