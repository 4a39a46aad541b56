"""Level-1 real-analytic Eisenstein series E(z, s) and the special functions it needs.

    E(z, s) = sum over coprime (c, d) up to sign of  y^s / |cz + d|^(2s)
            = y^s + phi(s) y^(1-s)
              + sum_{m != 0} phi(|m|; s) 2 sqrt(y) K_(s-1/2)(2 pi |m| y) e(mx)

with ``phi(s) = sqrt(pi) Gamma(s-1/2) zeta(2s-1) / (Gamma(s) zeta(2s))`` and
``phi(m; s) = pi^s m^(s-1/2) sigma_(1-2s)(m) / (Gamma(s) zeta(2s))``.

Two independent routes are provided: the Fourier expansion (valid for all
``s`` off the poles) and direct summation over the cosets (``Re s > 1``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import CertificationError, PoleError
from .forms import bernoulli
from .specfun import gamma_complex, rgamma, sinpi

__all__ = [
    "EisensteinParams",
    "EisensteinValue",
    "DirectValue",
    "divisor_sigma",
    "sigma_table",
    "riemann_zeta",
    "hurwitz_zeta",
    "bessel_k",
    "bessel_k_bound",
    "phi_constant",
    "phi_mode",
    "fourier_tail_bound",
    "eisenstein_fourier",
    "eisenstein_direct",
    "completed_eisenstein",
    "functional_eq_check",
    "theta_symmetry_gap",
    "constant_term_residue",
]

FOURIER_TAIL = 1e-12
_EM_TERMS = 40
# B_2j / (2j)!, j = 1.._EM_TERMS
_EM_COEFFS = tuple(float(bernoulli(2 * j) / math.factorial(2 * j)) for j in range(1, _EM_TERMS + 1))


@dataclass(frozen=True)
class EisensteinParams:
    s: complex
    fourier_modes: int | None = None
    direct_bound: int = 200

    def __post_init__(self):
        object.__setattr__(self, "s", complex(self.s))
        if self.fourier_modes is not None and self.fourier_modes < 1:
            raise ValueError("fourier_modes must be >= 1")
        if self.direct_bound < 1:
            raise ValueError("direct_bound must be >= 1")

    @property
    def direct_ok(self):
        return self.s.real > 1


@dataclass(frozen=True)
class EisensteinValue:
    value: complex
    tail_bound: float
    modes: int


@dataclass(frozen=True)
class DirectValue:
    value: complex
    tail_estimate: float
    method: str


# -- divisor sums ------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _divisors(m):
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return tuple(small + large[::-1])


def divisor_sigma(m, s):
    """``sum_{d | m} d^s``; exact (int or Fraction) when ``s`` is an int."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if isinstance(s, int) and not isinstance(s, bool):
        if s >= 0:
            return sum(d**s for d in _divisors(m))
        out = sum(Fraction(1, d ** (-s)) for d in _divisors(m))
        return out.numerator if out.denominator == 1 else out
    s = complex(s)
    return sum(cmath.exp(s * math.log(d)) for d in _divisors(m))


def sigma_table(M, w):
    """``sigma_w(m)`` for ``m = 0..M`` (entry 0 unused), by a divisor sieve."""
    out = np.zeros(M + 1, dtype=np.complex128)
    w = complex(w)
    for d in range(1, M + 1):
        out[d::d] += cmath.exp(w * math.log(d))
    return out


# -- zeta --------------------------------------------------------------------------


def hurwitz_zeta(s, a):
    """``sum_{n>=0} (n+a)^(-s)`` for ``a > 0`` by Euler-Maclaurin summation."""
    s = complex(s)
    if s == 1:
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    if not a > 0:
        raise ValueError("a must be positive")
    N = 20 + int(abs(s))
    n = np.arange(N, dtype=np.float64) + a
    head = complex(np.exp(-s * np.log(n)).sum())
    x = N + a
    lx = math.log(x)
    xs = cmath.exp(-s * lx)
    tail = x * xs / (s - 1) + 0.5 * xs
    # (s)_(2j-1) x^(-s-2j+1), advanced two factors at a time
    rising = s
    power = xs / x
    total = head + tail
    for j, b in enumerate(_EM_COEFFS, start=1):
        term = b * rising * power
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= x * x
    return total


def riemann_zeta(s):
    """Riemann zeta; Euler-Maclaurin, with the functional equation for Re(s) < 1/2."""
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if s.real < 0.5 and abs(s) > 0.5:
        # zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
        sn = sinpi(s / 2)
        if sn == 0:
            return 0j
        pref = cmath.exp(s * math.log(2) + (s - 1) * math.log(math.pi))
        return pref * sn * gamma_complex(1 - s) * hurwitz_zeta(1 - s, 1.0)
    return hurwitz_zeta(s, 1.0)


# -- K-Bessel ----------------------------------------------------------------------


def _bessel_steps(nu, xs):
    # the trapezoid error behaves like exp(-2 pi^2 / (h^2 R)), R = |x cosh t| at the peak
    R = np.sqrt(xs * xs + abs(nu) ** 2)
    return np.minimum(0.1, 0.5 / np.sqrt(R))


def bessel_k(nu, x):
    """``K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt`` for ``x > 0``.

    Trapezoid rule, whose error decays like ``exp(-c/h)`` for this analytic,
    doubly-exponentially decaying integrand; the step shrinks with ``x`` and
    ``|nu|``. Accepts a scalar or an array of ``x``.
    """
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any(xs <= 0) or not np.all(np.isfinite(xs)):
        raise ValueError("bessel_k needs finite x > 0")
    nu = complex(nu)
    out = kernels.bessel_k_trapezoid(nu, xs, _bessel_steps(nu, xs), 1e-18)
    if np.ndim(x) == 0:
        return complex(out[0])
    return out


def bessel_k_bound(mu, x):
    """Upper bound for ``|K_nu(x)|`` with ``|Re nu| = mu``.

    From ``K_mu(x) = sqrt(pi/2x) e^-x / Gamma(mu+1/2) int e^-u u^(mu-1/2) (1+u/2x)^(mu-1/2) du``
    and ``(1+u/2x)^p <= e^(pu/2x)``. Infinite if ``x <= (mu - 1/2)/2``.
    """
    mu = abs(mu)
    # the slack covers rounding; at mu = 1/2 the bound is an identity
    base = (1 + 1e-12) * math.sqrt(math.pi / (2 * x)) * math.exp(-x)
    if mu <= 0.5:
        return base
    c = (mu - 0.5) / (2 * x)
    if c >= 1:
        return math.inf
    return base * (1 - c) ** (-(mu + 0.5))


# -- Fourier expansion --------------------------------------------------------------


def _check_poles(s, tol=1e-8):
    for p, name in ((1.0, "s = 1"), (0.5, "s = 1/2")):
        if abs(s - p) < tol:
            raise PoleError(f"the constant term is singular at {name}")


def phi_constant(s):
    """``sqrt(pi) Gamma(s-1/2) zeta(2s-1) / (Gamma(s) zeta(2s))``."""
    s = complex(s)
    _check_poles(s)
    z2 = riemann_zeta(2 * s)
    if z2 == 0:
        raise PoleError(f"zeta(2s) vanishes at s = {s}")
    return math.sqrt(math.pi) * gamma_complex(s - 0.5) * riemann_zeta(2 * s - 1) * rgamma(s) / z2


def _mode_prefactor(s):
    z2 = riemann_zeta(2 * s)
    if z2 == 0:
        raise PoleError(f"zeta(2s) vanishes at s = {s}")
    return cmath.exp(s * math.log(math.pi)) * rgamma(s) / z2


def phi_mode(m, s):
    """``pi^s m^(s-1/2) sigma_(1-2s)(m) / (Gamma(s) zeta(2s))``."""
    s = complex(s)
    return (
        _mode_prefactor(s)
        * cmath.exp((s - 0.5) * math.log(m))
        * divisor_sigma(m, 1 - 2 * s)
    )


def _tail_terms(s, y, pref_abs, m):
    # bound on |phi(m;s)| 2 sqrt(y) |K| times 2 (modes m and -m)
    sigma = s.real
    mu = abs(sigma - 0.5)
    div = 2 * math.sqrt(m) * m ** max(0.0, 1 - 2 * sigma)
    return 4 * math.sqrt(y) * pref_abs * m ** (sigma - 0.5) * div * bessel_k_bound(mu, 2 * math.pi * m * y)


def fourier_tail_bound(s, y, M):
    """Certified bound on the modes ``|m| > M`` of the Fourier expansion.

    Uses ``|sigma_w(m)| <= d(m) max(1, m^Re w)``, ``d(m) <= 2 sqrt(m)`` and
    :func:`bessel_k_bound`; the sum is taken term by term until the terms
    are negligible, then closed with a geometric series at the last ratio.
    """
    s = complex(s)
    pref_abs = abs(_mode_prefactor(s))
    m = M + 1
    prev = _tail_terms(s, y, pref_abs, m)
    if not math.isfinite(prev):
        return math.inf
    total = prev
    while True:
        m += 1
        cur = _tail_terms(s, y, pref_abs, m)
        total += cur
        ratio = cur / prev if prev else 0.0
        if ratio < 1 and cur <= 1e-6 * total:
            return total + cur * ratio / (1 - ratio)
        if m > M + 10**6:
            return math.inf
        prev = cur


def _auto_modes(s, y):
    M = 1
    while fourier_tail_bound(s, y, M) > FOURIER_TAIL:
        M = M + max(1, M // 4)
        if M > 10**6:
            raise CertificationError(f"no mode count certifies the tail at y = {y}")
    return M


def eisenstein_fourier(z, s, M=None):
    """``E(z, s)`` from its Fourier expansion, modes ``|m| <= M``.

    ``M=None`` picks the smallest count whose certified tail is below 1e-12;
    an explicit ``M`` whose tail bound exceeds that raises
    :class:`CertificationError`.
    """
    z, s = complex(z), complex(s)
    x, y = z.real, z.imag
    if y <= 0:
        raise ValueError("z must lie in the upper half-plane")
    _check_poles(s)
    if M is None:
        M = _auto_modes(s, y)
    elif M < 1:
        raise ValueError("M must be >= 1")
    tail = fourier_tail_bound(s, y, M)
    if tail > FOURIER_TAIL:
        raise CertificationError(f"tail bound {tail:.3g} with M = {M} at y = {y} exceeds 1e-12")
    ly = math.log(y)
    const = cmath.exp(s * ly) + phi_constant(s) * cmath.exp((1 - s) * ly)
    m = np.arange(1, M + 1, dtype=np.float64)
    coef = _mode_prefactor(s) * np.exp((s - 0.5) * np.log(m)) * sigma_table(M, 1 - 2 * s)[1:]
    K = bessel_k(s - 0.5, 2 * math.pi * y * m)
    # x reduced mod 1 so E(z+1) = E(z) holds exactly
    xr = x - math.floor(x)
    modes = complex(np.sum(coef * K * np.cos(2 * math.pi * m * xr))) * 4 * math.sqrt(y)
    return EisensteinValue(const + modes, tail, M)


# -- direct summation --------------------------------------------------------------


def _row_sum(s, t, a):
    """``sum_{d in Z} ((t+d)^2 + a^2)^(-s)`` for ``0 <= t < 1``, ``a > 0``, Re(s) > 1/2."""
    D = int(math.ceil(2 * a)) + 10
    u = np.arange(-D, D + 1, dtype=np.float64) + t
    head = complex(np.exp(-s * np.log(u * u + a * a)).sum())
    # binomial expansion of (u^2 + a^2)^(-s) = u^(-2s) (1 + a^2/u^2)^(-s), |u| > 2a
    tail = 0j
    binom = 1 + 0j
    a2 = a * a
    j = 0
    while True:
        w = 2 * s + 2 * j
        term = binom * (hurwitz_zeta(w, D + 1 + t) + hurwitz_zeta(w, D + 1 - t))
        tail += term
        if abs(term) < 1e-18 * abs(head + tail):
            break
        j += 1
        binom *= -(s + j - 1) / j * a2
        if j > 200:
            raise ArithmeticError("row tail expansion did not converge")
    return head + tail


def _direct_rows(x, y, s):
    C = int(math.ceil(45 / (2 * math.pi * y)))
    total = 0j
    for c in range(1, C + 1):
        cx = c * x
        total += _row_sum(s, cx - math.floor(cx), c * y)
    A = math.sqrt(math.pi) * gamma_complex(s - 0.5) * rgamma(s)
    total += A * cmath.exp((1 - 2 * s) * math.log(y)) * hurwitz_zeta(2 * s - 1, C + 1)
    # neglected: the oscillating parts of rows c > C, each ~ exp(-2 pi c y)
    mu = abs(s.real - 0.5)
    pref = 4 * math.pi**s.real * abs(rgamma(s))
    est = 0.0
    for c in range(C + 1, C + 50):
        est += pref * (c * y) ** (0.5 - s.real) * bessel_k_bound(mu, 2 * math.pi * c * y)
    est /= 1 - math.exp(-2 * math.pi * y)
    return total, est


def eisenstein_direct(z, s, B=200, method="rows"):
    """``E(z, s)`` by summing over cosets, ``Re(s) > 1``.

    ``method="disk"`` is the literal sum over coprime ``(c, d)`` with
    ``c^2 + d^2 <= B^2``; its tail estimate is the lattice-point heuristic
    ``(3/pi) y^s (lam B^2)^(1-s) / (s-1)``, ``lam`` the smallest eigenvalue
    of the form ``|cz+d|^2``.

    ``method="rows"`` (default; ``B`` is ignored) removes coprimality with
    ``1/zeta(2s)`` and sums the rows ``c = 1, 2, ...`` over all ``d``: each
    row explicitly near its minimum plus a binomial expansion into Hurwitz
    zeta values, and rows beyond ``C ~ 45/(2 pi y)`` through their mean value.
    """
    z, s = complex(z), complex(s)
    x, y = z.real, z.imag
    if y <= 0:
        raise ValueError("z must lie in the upper half-plane")
    if s.real <= 1:
        raise ValueError("the coset sum converges only for Re(s) > 1")
    ys = cmath.exp(s * math.log(y))
    if method == "disk":
        if B < 1:
            raise ValueError("B must be >= 1")
        total = complex(kernels.coprime_disk_sum(x, y, s, int(B)))
        n2 = x * x + y * y
        lam = 0.5 * (n2 + 1 - math.sqrt((n2 - 1) ** 2 + 4 * x * x))
        sig = s.real
        est = 3 / math.pi * y**sig * (lam * B * B) ** (1 - sig) / (sig - 1)
        return DirectValue(ys + ys * total, est, "disk")
    if method != "rows":
        raise ValueError(f"unknown method {method!r}")
    rows, est = _direct_rows(x, y, s)
    factor = ys / riemann_zeta(2 * s)
    return DirectValue(ys + factor * rows, abs(factor) * est, "rows")


# -- functional equation -----------------------------------------------------------


def completed_eisenstein(z, s, M=None):
    """``pi^(-s) Gamma(s) zeta(2s) E(z, s)`` with ``E`` from the Fourier expansion."""
    s = complex(s)
    E = eisenstein_fourier(z, s, M).value
    return cmath.exp(-s * math.log(math.pi)) * gamma_complex(s) * riemann_zeta(2 * s) * E


def functional_eq_check(z, s, M=None, eps=1e-300):
    """``|E*(z,s) - E*(z,1-s)| / max(|E*(z,s)|, eps)``."""
    s = complex(s)
    for v in (s, 1 - s):
        _check_poles(v, tol=1e-6)
        if abs(v) < 1e-6:
            raise PoleError("Gamma(s) has a pole at s = 0")
    a = completed_eisenstein(z, s, M)
    b = completed_eisenstein(z, 1 - s, M)
    return abs(a - b) / max(abs(a), eps)


def theta_symmetry_gap(m, s):
    """Relative gap in ``m^(s-1/2) sigma_(1-2s)(m) = m^(1/2-s) sigma_(2s-1)(m)``."""
    s = complex(s)
    lm = math.log(m)
    left = cmath.exp((s - 0.5) * lm) * divisor_sigma(m, 1 - 2 * s)
    right = cmath.exp((0.5 - s) * lm) * divisor_sigma(m, 2 * s - 1)
    return abs(left - right) / max(abs(left), abs(right), 1e-300)


def constant_term_residue(s0, radius=0.1, points=64):
    """``(1/2 pi i) contour integral of phi`` around ``s0`` and ``max |phi|`` on the circle.

    The trapezoid rule on a circle is spectrally accurate, so a value near
    zero means ``phi`` has no pole inside.
    """
    s0 = complex(s0)
    theta = 2 * math.pi * np.arange(points) / points
    pts = s0 + radius * np.exp(1j * theta)
    vals = np.array([phi_constant(p) for p in pts])
    # ds = i r e^(i theta) d theta
    integral = np.sum(vals * radius * np.exp(1j * theta)) / points
    return complex(integral), float(np.abs(vals).max())
