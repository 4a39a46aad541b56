"""Restricting a q-expansion to one residue class, and the twist average that does it.

For a modulus ``m`` and class ``n0``,

    g(z) = sum_{n = n0 mod m} a(n) q^n
         = (1/m) sum_{j mod m} e(-n0 j / m) f(z + j/m),

since ``(1/m) sum_j e((n - n0) j / m)`` is the indicator of ``n = n0 mod m``.
:func:`twist_average_check` evaluates both sides at sample points: the left
from the extracted coefficients in float64, the right as the literal average
of shifted values of ``f`` in extended precision (the shifted values are of
the size of ``f`` and cancel down to ``g``, which can be many orders smaller).
"""

from __future__ import annotations

import cmath
import math

import mpmath
import numpy as np

from . import kernels
from .errors import CertificationError
from .qseries import QSeries

__all__ = [
    "ap_extract",
    "orthogonality_indicator",
    "truncation_tail",
    "twist_average_check",
    "MIN_HEIGHT",
]

MIN_HEIGHT = 0.05
_TAIL_LIMIT = 1e-12


def ap_extract(f, n0, modulus):
    """Keep the coefficients ``a(n)`` with ``n = n0 (mod modulus)``; zero the rest."""
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    if n0 < 1:
        raise ValueError("n0 must be >= 1")
    series = f.series if hasattr(f, "series") else f
    res = n0 % modulus
    out = [c if n % modulus == res else 0 for n, c in enumerate(series.coeffs)]
    return QSeries(out)


def orthogonality_indicator(n, n0, modulus):
    """``(1/m) sum_{j<m} e((n - n0) j / m)`` summed in closed form.

    For ``t = (n - n0) mod m`` nonzero this is a geometric sum of an
    ``m``-th root of unity other than 1, which vanishes; otherwise every
    term is 1. Returned as an exact integer.
    """
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    return 1 if (n - n0) % modulus == 0 else 0


def truncation_tail(growth_const, weight, N, y):
    """Bound on ``sum_{n>N} |a(n)| e^(-2 pi n y)`` given ``|a(n)| <= C n^(k/2)``.

    Geometric comparison once the ratio of consecutive majorant terms is
    below one; ``inf`` if ``N`` is still before the majorant's peak.
    """
    C = float(growth_const)
    if C == 0:
        return 0.0
    half_k = weight / 2
    rho = ((N + 2) / (N + 1)) ** half_k * math.exp(-2 * math.pi * y)
    if rho >= 1:
        return math.inf
    first = C * math.exp(half_k * math.log(N + 1) - 2 * math.pi * (N + 1) * y)
    return first / (1 - rho)


def _float_coeffs(series, N):
    return np.array([float(c) for c in series.coeffs[: N + 1]], dtype=np.float64)


def _shift_average(coeffs, z, n0, modulus, normalization, phase, dps):
    """The right-hand side, summed in ``dps``-digit arithmetic."""
    with mpmath.workdps(dps):
        a = [mpmath.mpf(c) for c in coeffs]
        zz = mpmath.mpc(z.real, z.imag)
        total = mpmath.mpc(0)
        for j in range(modulus):
            q = mpmath.expjpi(2 * (zz + mpmath.mpf(j) / modulus))
            val = mpmath.mpc(0)
            for c in reversed(a):
                val = val * q + c
            if phase == "constant":
                w = mpmath.expjpi(-2 * mpmath.mpf(n0 * j) / modulus)
            else:
                w = mpmath.expjpi(-2 * n0 * j * zz / modulus)
            total += w * val
        if normalization == "residues":
            total /= modulus
        else:
            total /= _totient(modulus)
        return complex(total)


def _totient(m):
    return sum(1 for j in range(1, m + 1) if math.gcd(j, m) == 1)


def twist_average_check(
    f,
    n0,
    modulus,
    z_samples,
    N,
    normalization="residues",
    phase="constant",
    eps=1e-300,
    dps=40,
):
    """Largest ``|lhs - rhs| / (|lhs| + |rhs| + eps)`` over ``z_samples``.

    ``normalization="totient"`` divides by ``phi(modulus)`` instead of the
    number of residues and ``phase="z_dependent"`` uses ``e(-n0 j z / m)``;
    both exist only to evaluate those variants, which do not sieve.
    Raises :class:`CertificationError` if a sample lies below
    :data:`MIN_HEIGHT` or the truncation tail at ``N`` exceeds 1e-12 there.
    """
    if normalization not in ("residues", "totient"):
        raise ValueError(f"unknown normalization {normalization!r}")
    if phase not in ("constant", "z_dependent"):
        raise ValueError(f"unknown phase {phase!r}")
    if N > f.trunc_order:
        raise ValueError(f"N = {N} exceeds the form's truncation {f.trunc_order}")
    zs = [complex(z) for z in z_samples]
    for z in zs:
        if z.imag < MIN_HEIGHT:
            raise CertificationError(f"sample {z} lies below height {MIN_HEIGHT}")
        tail = truncation_tail(f.growth_const, f.weight, N, z.imag)
        if tail > _TAIL_LIMIT:
            raise CertificationError(f"truncation tail {tail:.3g} at {z} exceeds 1e-12")
    if f.is_zero():
        return 0.0
    coeffs = _float_coeffs(f.series, N)
    g = _float_coeffs(ap_extract(f, n0, modulus), N)
    qs = np.array([cmath.exp(2j * math.pi * z) for z in zs])
    lhs = kernels.horner(g, qs)
    worst = 0.0
    for z, left in zip(zs, lhs):
        right = _shift_average(coeffs, z, n0, modulus, normalization, phase, dps)
        err = abs(left - right) / (abs(left) + abs(right) + eps)
        worst = max(worst, err)
    return worst
