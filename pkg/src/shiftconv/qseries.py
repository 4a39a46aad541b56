"""Truncated q-expansions with exact coefficients.

A :class:`QSeries` stores the coefficients of ``q^0 .. q^N`` exactly. Integral
values are kept as ``int``, other rationals as :class:`fractions.Fraction`;
coefficients from a quadratic field (see :mod:`shiftconv.quadratic`) are
allowed as well, they just take the slow multiplication path.

Everything past the truncation order is *unknown*, not zero: indexing beyond
``trunc_order`` raises :class:`~shiftconv.errors.TruncationError`.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational

import numpy as np

from .errors import TruncationError

__all__ = [
    "QSeries",
    "qs_mul",
    "qs_pow",
    "eta_expansion",
    "eta_cubed_expansion",
    "pentagonal_terms",
]

# below this length the schoolbook product beats packing into big ints
_KRONECKER_MIN = 24


def _normalize(c):
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _normalize(Fraction(c.numerator, c.denominator))
    if isinstance(c, (float, complex, np.floating, np.complexfloating)):
        raise TypeError(f"q-series coefficients must be exact, got {type(c).__name__}")
    if isinstance(c, np.integer):
        return int(c)
    # anything else (quadratic-field elements) is trusted to be exact
    return c


class QSeries:
    """Coefficients ``a_0, ..., a_N`` of a q-expansion known modulo ``q^(N+1)``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs, trunc_order=None):
        cs = [_normalize(c) for c in coeffs]
        if trunc_order is not None:
            if trunc_order < 0:
                raise ValueError("trunc_order must be non-negative")
            if len(cs) < trunc_order + 1:
                raise TruncationError(
                    f"{len(cs)} coefficients given for trunc_order {trunc_order}",
                    required=trunc_order,
                )
            cs = cs[: trunc_order + 1]
        if not cs:
            raise ValueError("a QSeries needs at least the constant coefficient")
        self._coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs):
        obj = cls.__new__(cls)
        obj._coeffs = tuple(coeffs)
        return obj

    @classmethod
    def zero(cls, trunc_order):
        return cls._raw([0] * (trunc_order + 1))

    @classmethod
    def one(cls, trunc_order):
        return cls._raw([1] + [0] * trunc_order)

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def trunc_order(self):
        return len(self._coeffs) - 1

    def __len__(self):
        return len(self._coeffs)

    def __getitem__(self, n):
        if isinstance(n, slice):
            start, stop, step = n.indices(len(self._coeffs))
            if n.stop is not None and n.stop > len(self._coeffs):
                raise TruncationError(
                    f"slice up to {n.stop - 1} exceeds trunc_order {self.trunc_order}",
                    required=n.stop - 1,
                )
            return self._coeffs[start:stop:step]
        if n < 0:
            raise IndexError("negative exponent")
        if n > self.trunc_order:
            raise TruncationError(
                f"coefficient of q^{n} requested, series known to q^{self.trunc_order}",
                required=n,
            )
        return self._coeffs[n]

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self._coeffs[:6])
        more = ", ..." if len(self._coeffs) > 6 else ""
        return f"QSeries([{head}{more}], trunc_order={self.trunc_order})"

    def truncate(self, order):
        if order > self.trunc_order:
            raise TruncationError(
                f"cannot extend trunc_order {self.trunc_order} to {order}",
                required=order,
            )
        return QSeries._raw(self._coeffs[: order + 1])

    def shift(self, k):
        """Multiply by ``q^k``; the known range grows by ``k`` as well."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        return QSeries._raw((0,) * k + self._coeffs)

    def scale(self, c):
        c = _normalize(c)
        return QSeries._raw([_normalize(c * a) for a in self._coeffs])

    def __neg__(self):
        return QSeries._raw([-a for a in self._coeffs])

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(len(self), len(other))
        return QSeries._raw(
            [_normalize(a + b) for a, b in zip(self._coeffs[:n], other._coeffs[:n])]
        )

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return qs_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e):
        return qs_pow(self, e)

    def is_integral(self):
        return all(isinstance(c, int) for c in self._coeffs)

    def is_rational(self):
        return all(isinstance(c, (int, Fraction)) for c in self._coeffs)

    def to_float(self):
        """Coefficients as a float64 array (rational series only)."""
        return np.array([float(c) for c in self._coeffs], dtype=np.float64)


# -- multiplication -----------------------------------------------------------


def _pack(values, nbytes):
    return int.from_bytes(b"".join(v.to_bytes(nbytes, "little") for v in values), "little")


def _unpack(x, count, nbytes):
    raw = x.to_bytes(max((x.bit_length() + 7) // 8, count * nbytes), "little")
    return [int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") for i in range(count)]


def _int_convolve(a, b, n_out):
    """First ``n_out`` coefficients of the product of two integer lists.

    Kronecker substitution: pack the non-negative and negative parts into
    big integers, multiply, and slice the product back apart.
    """
    a = a[:n_out]
    b = b[:n_out]
    amax = max((abs(x) for x in a), default=0)
    bmax = max((abs(x) for x in b), default=0)
    if amax == 0 or bmax == 0:
        return [0] * n_out
    bound = amax * bmax * min(len(a), len(b))
    nbytes = bound.bit_length() // 8 + 1
    ap = _pack([x if x > 0 else 0 for x in a], nbytes)
    am = _pack([-x if x < 0 else 0 for x in a], nbytes)
    bp = _pack([x if x > 0 else 0 for x in b], nbytes)
    bm = _pack([-x if x < 0 else 0 for x in b], nbytes)
    pos = _unpack(ap * bp + am * bm, n_out, nbytes)
    neg = _unpack(ap * bm + am * bp, n_out, nbytes)
    return [p - q for p, q in zip(pos, neg)]


def _schoolbook(a, b, n_out):
    out = []
    for n in range(n_out):
        acc = 0
        for i in range(max(0, n - len(b) + 1), min(n, len(a) - 1) + 1):
            ai = a[i]
            if ai:
                acc = acc + ai * b[n - i]
        out.append(_normalize(acc))
    return out


def qs_mul(A, B):
    """Truncated Cauchy product; exact, result known to ``min`` of the orders."""
    n_out = min(len(A), len(B))
    a, b = A.coeffs, B.coeffs
    if n_out < _KRONECKER_MIN or not (A.is_rational() and B.is_rational()):
        return QSeries._raw(_schoolbook(a, b, n_out))
    da = lcm(*(c.denominator for c in a if isinstance(c, Fraction))) if not A.is_integral() else 1
    db = lcm(*(c.denominator for c in b if isinstance(c, Fraction))) if not B.is_integral() else 1
    ia = [int(c * da) for c in a[:n_out]]
    ib = [int(c * db) for c in b[:n_out]]
    prod = _int_convolve(ia, ib, n_out)
    den = da * db
    if den == 1:
        return QSeries._raw(prod)
    return QSeries._raw([_normalize(Fraction(c, den)) for c in prod])


def qs_pow(A, e):
    """``A**e`` by binary exponentiation; ``e == 0`` gives the constant 1."""
    if e < 0:
        raise ValueError("negative powers are not supported")
    result = QSeries.one(A.trunc_order)
    base = A
    first = True
    while e:
        if e & 1:
            result = base if first else qs_mul(result, base)
            first = False
        e >>= 1
        if e:
            base = qs_mul(base, base)
    return result


# -- eta products -----------------------------------------------------------


def pentagonal_terms(N):
    """``(exponent, sign)`` pairs of prod(1 - q^n) up to q^N, by exponent."""
    terms = [(0, 1)]
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        lo = k * (3 * k - 1) // 2
        if lo > N:
            break
        terms.append((lo, sign))
        hi = k * (3 * k + 1) // 2
        if hi <= N:
            terms.append((hi, sign))
        k += 1
    return sorted(terms)


def eta_expansion(N):
    """prod_{n>=1} (1 - q^n) modulo q^(N+1) (no q^(1/24) prefactor)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    coeffs = [0] * (N + 1)
    for j, sign in pentagonal_terms(N):
        coeffs[j] = sign
    return QSeries._raw(coeffs)


def eta_cubed_terms(N):
    """``(exponent, coefficient)`` pairs of prod(1 - q^n)^3 up to q^N.

    Jacobi: sum_{k>=0} (-1)^k (2k+1) q^(k(k+1)/2).
    """
    out = []
    k = 0
    while k * (k + 1) // 2 <= N:
        out.append((k * (k + 1) // 2, (-1) ** k * (2 * k + 1)))
        k += 1
    return out


def eta_cubed_expansion(N):
    coeffs = [0] * (N + 1)
    for j, c in eta_cubed_terms(N):
        coeffs[j] = c
    return QSeries._raw(coeffs)
