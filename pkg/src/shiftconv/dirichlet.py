"""The shifted-convolution Dirichlet series D(s, r) and its Mellin-integral form.

``D(s, r) = sum_n a(n) a(n+r) (n + r/2)^(-s)``. Besides truncated evaluation
with tail bounds, this module checks numerically that

    int_0^inf y^(s+k-2) A_r(y) dy = Gamma(s+k-1) (4 pi)^-(s+k-1) D(s+k-1, r),

where ``A_r(y) = int_0^1 e(rx) |f(x+iy)|^2 dx`` is the shifted convolution of
the coefficients against ``exp(-2 pi (2n+r) y)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import CertificationError, QuadratureError, TruncationError
from .quadrature import apply_rule, integrate
from .specfun import gamma_complex

__all__ = [
    "SeriesEval",
    "UnfoldingJob",
    "UnfoldingResult",
    "shifted_float",
    "dirichlet_polynomial",
    "d_series",
    "d_series_derivative",
    "tail_bound",
    "unfolding_check",
    "unfolded_integral_2d",
    "unfolding_check_2d",
    "gamma_integral",
]

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class SeriesEval:
    value: complex
    tail_bound: float
    trunc: int
    rigorous: bool


def shifted_float(f, r, N):
    """float64 array of ``a(n) a(n+r)`` for ``n = 1..N``."""
    if f.trunc_order < N + r:
        raise TruncationError(
            f"need the form to q^{N + r}, have q^{f.trunc_order}", required=N + r
        )
    a = f.series.coeffs
    return np.array([float(a[n] * a[n + r]) for n in range(1, N + 1)], dtype=np.float64)


def dirichlet_polynomial(coeffs, r, s):
    """``sum c_n (n + r/2)^(-s)`` for a finite sequence.

    ``coeffs`` is either a mapping ``n -> c_n`` or a sequence ``c_1, c_2, ...``.
    """
    items = coeffs.items() if hasattr(coeffs, "items") else enumerate(coeffs, start=1)
    ns, cs = [], []
    for n, c in items:
        if c:
            ns.append(n)
            cs.append(float(c))
    if not ns:
        return 0j
    base = np.array(ns, dtype=np.float64) + r / 2
    return complex(kernels.dirichlet_sum(np.array(cs), base, complex(s), 0))


def tail_bound(growth_const, k, r, s, N):
    """Bound on ``|sum_{n>N} c_n (n+r/2)^(-s)|`` and whether it is rigorous.

    Uses ``|c_n| <= C^2 (n+r)^k`` and integral comparison; rigorous for
    Re(s) > k+1. For k < Re(s) <= k+1 the bound assumes square-root size
    ``|c_n| ~ C^2 n^(k-1)`` and is flagged heuristic. Returns ``(inf, False)``
    when Re(s) <= k.
    """
    C = float(growth_const)
    if C == 0:
        return 0.0, True
    sigma = complex(s).real
    rho = (1 + r / (2 * N + 2 + r)) ** k
    base = N + r / 2
    if sigma > k + 1:
        return C * C * rho * base ** (k - sigma + 1) / (sigma - k - 1), True
    if sigma > k:
        return C * C * rho * base ** (k - sigma) / (sigma - k), False
    return math.inf, False


def d_series(f, r, s, N, require_bound=True):
    """Truncated ``D(s, r)`` with a tail bound from the form's growth constant."""
    s = complex(s)
    k = f.weight
    if require_bound and s.real <= k:
        raise ValueError(f"Re(s) = {s.real} <= k = {k}: no tail bound available")
    c = shifted_float(f, r, N)
    base = np.arange(1, N + 1, dtype=np.float64) + r / 2
    value = complex(kernels.dirichlet_sum(c, base, s, 0))
    tail, rigorous = tail_bound(f.growth_const, k, r, s, N)
    return SeriesEval(value, tail, N, rigorous)


def d_series_derivative(f, r, s, N):
    """``d/ds`` of the truncated series: ``sum -log(n+r/2) c_n (n+r/2)^(-s)``."""
    c = shifted_float(f, r, N)
    base = np.arange(1, N + 1, dtype=np.float64) + r / 2
    return complex(kernels.dirichlet_sum(c, base, complex(s), 1))


def gamma_integral(p, lam):
    """``int_0^inf y^(p-1) exp(-lam y) dy = Gamma(p) lam^(-p)``."""
    return gamma_complex(p) * np.exp(-complex(p) * math.log(lam))


# -- unfolding -------------------------------------------------------------------


@dataclass
class UnfoldingJob:
    form: object
    r: int
    s: complex
    trunc: int
    quad_tol: float = 1e-10

    def __post_init__(self):
        self.s = complex(self.s)
        if self.s.real <= 1:
            raise ValueError("the unfolded integral needs Re(s) > 1")
        if self.r < 1:
            raise ValueError("shift r must be positive")
        if not self.quad_tol > 0:
            raise ValueError("quad_tol must be positive")


@dataclass
class UnfoldingResult:
    lhs: complex
    rhs: complex
    rel_err: float
    quad_error: float = 0.0
    tail_bound: float = 0.0
    cutoff: float = 1.0
    partition: list = field(default_factory=list, repr=False)


def _rel_err(a, b):
    if a == b:
        return 0.0
    if b == 0:
        return math.inf
    return abs(a - b) / abs(b)


def _mellin_integrand(c, r, p):
    n = np.arange(1, c.shape[0] + 1, dtype=np.float64)
    freq = TWO_PI * (2 * n + r)

    def g(ys):
        return kernels.expsum(c, freq, ys) * np.exp(p * np.log(ys))

    return g


def _exp_tail(c, r, p_re, Y):
    """Bound on ``int_Y^inf y^p_re |A_r(y)| dy``, valid for ``Y >= 2 p_re / lam``."""
    n = np.arange(1, c.shape[0] + 1, dtype=np.float64)
    lam = TWO_PI * (2 + r)
    at_Y = float(np.sum(np.abs(c) * np.exp(-TWO_PI * (2 * n + r) * Y)))
    return Y**p_re * at_Y * 2 / lam


def unfolding_check(job, inject_sign_bug=False):
    """Compare the Mellin integral of ``A_r`` with the Gamma-factor closed form.

    ``lhs`` is computed by adaptive quadrature on ``(0, 1]`` and ``[1, Y]``,
    with ``Y`` grown until the analytic exponential tail bound beyond it is
    below ``quad_tol`` relative to the integral. ``rhs`` is
    ``Gamma(s+k-1) (4 pi)^-(s+k-1) sum c_n (n+r/2)^-(s+k-1)``.
    ``inject_sign_bug`` flips the sign of ``rhs`` (a mutation test hook).
    """
    f, r, s, N, tol = job.form, job.r, job.s, job.trunc, job.quad_tol
    k = f.weight
    if k <= 2:
        raise ValueError("weight must exceed 2")
    c = shifted_float(f, r, N)
    p = s + k - 2
    w = s + k - 1
    base = np.arange(1, N + 1, dtype=np.float64) + r / 2
    rhs = gamma_complex(w) * np.exp(-w * math.log(4 * math.pi)) * complex(
        kernels.dirichlet_sum(c, base, w, 0)
    )
    if inject_sign_bug:
        rhs = -rhs
    if not np.any(c):
        return UnfoldingResult(0j, rhs, _rel_err(0j, rhs), partition=[(0.0, 1.0)])

    g = _mellin_integrand(c, r, p)
    lam = TWO_PI * (2 + r)
    try:
        low = integrate(g, 0.0, 1.0, rtol=tol)
        Y = max(2.0, 2 * p.real / lam)
        while True:
            high = integrate(g, 1.0, Y, rtol=tol, atol=0.1 * tol * abs(low.value))
            total = low.value + high.value
            tail = _exp_tail(c, r, p.real, Y)
            if tail <= 0.1 * tol * abs(total) or Y > 1e4:
                break
            Y *= 1.5
    except QuadratureError as exc:
        raise QuadratureError(f"unfolding quadrature failed at s = {s}: {exc}") from exc
    if tail > tol * abs(total):
        raise CertificationError(f"exponential tail {tail:.3g} not below tolerance")
    return UnfoldingResult(
        lhs=total,
        rhs=rhs,
        rel_err=_rel_err(total, rhs),
        quad_error=low.error + high.error,
        tail_bound=tail,
        cutoff=Y,
        partition=low.intervals + high.intervals,
    )


def _fourier_average(f, r, N, x_nodes):
    """``y -> int_0^1 e(rx) |f_T(x+iy)|^2 dx`` by the x_nodes-point trapezoid rule.

    ``f_T`` is the expansion cut after ``q^(N+r)``; the rule is exact because
    every frequency of ``e(rx) |f_T|^2`` is below ``x_nodes`` in size.
    """
    a = np.array([float(v) for v in f.series.coeffs[: N + r + 1]], dtype=np.float64)
    n = np.arange(a.shape[0], dtype=np.float64)
    j = np.arange(x_nodes)
    twist = np.exp(2j * math.pi * r * j / x_nodes)

    def avg(ys):
        b = np.zeros((ys.shape[0], x_nodes), dtype=np.complex128)
        b[:, : a.shape[0]] = a[None, :] * np.exp(-TWO_PI * np.outer(ys, n))
        vals = np.fft.ifft(b, axis=1) * x_nodes  # f(j/K + iy)
        return (np.abs(vals) ** 2 @ twist) / x_nodes

    return avg


def unfolded_integral_2d(job, x_nodes, partition):
    """The Mellin integral with ``A_r`` replaced by a numerical x-average of ``|f|^2``."""
    N, r = job.trunc, job.r
    if x_nodes <= 2 * (N + r):
        raise ValueError(f"x_nodes = {x_nodes} undersamples; need > {2 * (N + r)}")
    if job.form.trunc_order < N + r:
        raise TruncationError(
            f"need the form to q^{N + r}, have q^{job.form.trunc_order}", required=N + r
        )
    p = job.s + job.form.weight - 2
    avg = _fourier_average(job.form, r, N, x_nodes)
    value, _ = apply_rule(lambda ys: avg(ys) * np.exp(p * np.log(ys)), partition)
    return value


def unfolding_check_2d(job, x_nodes):
    """Relative gap between the 2-D (x-average then y-quadrature) and coefficient forms.

    Both integrals use the partition chosen by :func:`unfolding_check`, so the
    comparison isolates the orthogonality step.
    """
    ref = unfolding_check(job)
    value = unfolded_integral_2d(job, x_nodes, ref.partition)
    return _rel_err(value, ref.lhs)
