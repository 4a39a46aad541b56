"""Gamma, Pochhammer, Gauss 2F1, the terminating polynomial P_m and Delta_r.

Analytic evaluation is done in complex128. Whenever an expression
terminates and all inputs are rational, the exact path (Fractions) is used
instead.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PoleError

__all__ = [
    "gamma_complex",
    "sinpi",
    "rgamma",
    "pochhammer",
    "hyp2f1",
    "HypergeomPoly",
    "pm_polynomial",
    "delta_r",
    "delta_r_poles",
]

_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


def _stirling_coefficients(count):
    # B_2j / (2j (2j-1)), j = 1..count, via the exact Bernoulli recurrence
    B = [Fraction(1)]
    for n in range(1, 2 * count + 1):
        acc = Fraction(0)
        binom = 1
        for j in range(n):
            acc += binom * B[j]
            binom = binom * (n + 1 - j) // (j + 1)
        B.append(-acc / (n + 1))
    return tuple(float(B[2 * j] / (2 * j * (2 * j - 1))) for j in range(1, count + 1))


_STIRLING = _stirling_coefficients(14)
# Stirling's series is used once |z| exceeds this; smaller arguments are shifted up
_STIRLING_MIN = 18.0


def _is_exact(x):
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _nonpositive_int(x, tol=0.0):
    """Return ``-n`` if ``x`` is (within ``tol`` of) a non-positive integer ``-n``."""
    if _is_exact(x):
        x = Fraction(x)
        return int(x) if x.denominator == 1 and x <= 0 else None
    x = complex(x)
    if abs(x.imag) > tol:
        return None
    r = round(x.real)
    if r <= 0 and abs(x.real - r) <= tol and abs(x - r) <= tol:
        return int(r)
    return None


def _log_gamma_stirling(z):
    # log Gamma(z) for |z| >= _STIRLING_MIN, Re(z) > 0
    inv = 1 / z
    inv2 = inv * inv
    corr = 0j
    p = inv
    for c in _STIRLING:
        corr += c * p
        p *= inv2
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + corr


def sinpi(s):
    """sin(pi s) with the integer part of Re(s) removed before scaling by pi."""
    s = complex(s)
    n = round(s.real)
    v = cmath.sin(math.pi * (s - n))
    return -v if n % 2 else v


def gamma_complex(s):
    """Gamma(s) for complex ``s``; raises :class:`PoleError` at 0, -1, -2, ...

    Reflection for Re(s) < 1/2, then upward recurrence into the range where
    Stirling's series with 14 Bernoulli terms is accurate to rounding.
    """
    s = complex(s)
    if _nonpositive_int(s) is not None:
        raise PoleError(f"Gamma has a pole at s = {s.real:g}")
    if s.real < 0.5:
        return math.pi / (sinpi(s) * gamma_complex(1 - s))
    if s.imag == 0 and s.real == round(s.real) and s.real <= 171:
        return complex(math.factorial(int(s.real) - 1))
    denom = 1 + 0j
    z = s
    while abs(z) < _STIRLING_MIN:
        denom *= z
        z += 1
    return cmath.exp(_log_gamma_stirling(z)) / denom


def rgamma(s):
    """1/Gamma(s), entire: exactly zero at the poles of Gamma."""
    if _nonpositive_int(complex(s)) is not None:
        return 0j
    return 1 / gamma_complex(s)


def pochhammer(a, w):
    """Rising factorial (a)_w = a (a+1) ... (a+w-1); exact for rational ``a``."""
    if w < 0:
        raise ValueError("w must be non-negative")
    if _is_exact(a):
        acc = Fraction(1)
        a = Fraction(a)
        for j in range(w):
            acc *= a + j
        return acc.numerator if acc.denominator == 1 else acc
    acc = 1 + 0j
    a = complex(a)
    for j in range(w):
        acc *= a + j
    return acc


def _terminating_degree(a, b):
    degs = [-n for n in (_nonpositive_int(a), _nonpositive_int(b)) if n is not None]
    return min(degs) if degs else None


def _hyp_terms_exact(a, b, c, z, m, start):
    a, b, c, z = (Fraction(v) for v in (a, b, c, z))
    term = Fraction(1)
    total = Fraction(1) if start == 0 else Fraction(0)
    for w in range(m):
        term = term * (a + w) * (b + w) / ((c + w) * (w + 1)) * z
        total += term
    return total


def _hyp_terms_float(a, b, c, z, m, start, rtol=1e-16, max_terms=200000):
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    term = 1 + 0j
    total = (1 + 0j) if start == 0 else 0j
    small = 0
    w = 0
    while m is None or w < m:
        term = term * (a + w) * (b + w) / ((c + w) * (w + 1)) * z
        total += term
        w += 1
        if m is None:
            if abs(term) < rtol * abs(total if start == 0 else total + 1):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
            if w >= max_terms:
                raise ArithmeticError("2F1 series did not converge")
    return total


def hyp2f1(a, b, c, z, minus_one=False):
    """Gauss series sum (a)_w (b)_w / ((c)_w w!) z^w.

    Terminating series (``a`` or ``b`` a non-positive integer) are summed
    exactly when every input is rational. Otherwise ``|z| < 1`` is required
    and summation stops once three consecutive terms fall below 1e-16 of the
    partial sum. ``minus_one=True`` returns ``F - 1`` without cancellation.
    """
    m = _terminating_degree(a, b)
    c_pole = _nonpositive_int(c)
    if c_pole is not None and (m is None or m > -c_pole):
        raise PoleError(f"2F1 denominator (c)_w vanishes at c = {c}")
    start = 1 if minus_one else 0
    if m is not None and all(_is_exact(v) for v in (a, b, c, z)):
        out = _hyp_terms_exact(a, b, c, z, m, start)
        return out.numerator if out.denominator == 1 else out
    if m is None and abs(complex(z)) >= 1:
        raise ValueError("non-terminating 2F1 needs |z| < 1")
    return _hyp_terms_float(a, b, c, z, m, start)


@dataclass(frozen=True)
class HypergeomPoly:
    """P_m(z) = 2F1(-m, -m+1/2; 3/2-k-2m; z) with exact coefficients.

    ``lambda_[w]`` is the coefficient of ``z^w``; ``alpha[v] = r^(2v) lambda_[v]``
    are the coefficients of the same polynomial written in the node variable
    ``x = 2n + r``: ``x^(2m) P_m((r/x)^2) = sum_v alpha[v] x^(2m-2v)``.
    """

    m: int
    k: int
    r: int
    lambda_: tuple
    alpha: tuple

    def __call__(self, z):
        acc = 0
        for c in reversed(self.lambda_):
            acc = acc * z + c
        return acc

    def node_value(self, x):
        """``sum_v alpha[v] x^(2m-2v)``."""
        return sum(a * x ** (2 * (self.m - v)) for v, a in enumerate(self.alpha))


def pm_polynomial(m, k, r=1):
    if m < 0 or k < 3 or r < 1:
        raise ValueError("need m >= 0, k >= 3, r >= 1")
    a, b, c = Fraction(-m), Fraction(-2 * m + 1, 2), Fraction(3, 2) - k - 2 * m
    lam = []
    term = Fraction(1)
    for w in range(m + 1):
        if w:
            term = term * (a + w - 1) * (b + w - 1) / ((c + w - 1) * w)
        lam.append(term)
    if any(x == 0 for x in lam):
        raise ArithmeticError(f"vanishing coefficient in P_{m} for k = {k}")
    alpha = tuple(r ** (2 * v) * lam[v] for v in range(m + 1))
    return HypergeomPoly(m, k, r, tuple(lam), alpha)


def delta_r_poles(s, k, tol=1e-6):
    """Names of the Gamma / 2F1 singularities within ``tol`` of ``s``."""
    s = complex(s)
    checks = {
        "Gamma(s-1/2)": s - 0.5,
        "Gamma(k-s)": k - s,
        "2F1 c = s+1/2": s + 0.5,
        "2F1 c = 3/2-s": 1.5 - s,
    }
    return [name for name, v in checks.items() if _nonpositive_int(v, tol) is not None]


def delta_r(s, n, k, r):
    """The correction term Delta_r(s, n) built from two 2F1 values at (r/(2n+r))^2."""
    s = complex(s)
    if not -1 < s.real < 2:
        raise ValueError("Delta_r is evaluated only in the strip -1 < Re(s) < 2")
    if n < 1 or r < 1:
        raise ValueError("n and r must be positive")
    bad = delta_r_poles(s, k)
    if bad:
        raise PoleError(f"s = {s} is at a singularity: {', '.join(bad)}")
    z0 = (r / (2 * n + r)) ** 2
    f1m1 = hyp2f1((k + s - 1) / 2, (k + s) / 2, s + 0.5, z0, minus_one=True)
    f2m1 = hyp2f1((k - s) / 2, (k - s + 1) / 2, 1.5 - s, z0, minus_one=True)
    coef = gamma_complex(k - s) * gamma_complex(s - 0.5) * rgamma(k + s - 1) * rgamma(0.5 - s)
    power = cmath.exp((2 * s - 1) * math.log((4 * n + 2 * r) / r))
    return -f1m1 - coef * power * f2m1
