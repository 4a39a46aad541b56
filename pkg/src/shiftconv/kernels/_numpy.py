"""Pure-numpy implementations of the hot loops.

Every function here has a numba twin in ``_numba`` with the same signature
and the same result up to floating-point summation order.
"""

import numpy as np

_CHUNK = 1 << 16


def mul_sparse_mod(dense, idx, val, p):
    """``(dense * sparse) mod p`` truncated to ``len(dense)``.

    ``dense`` holds residues in ``[0, p)``; ``val`` must be reduced mod ``p``.
    With ``p < 2**31`` every intermediate fits in int64.
    """
    n = dense.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for j, v in zip(idx, val):
        if j >= n:
            break
        out[j:] = (out[j:] + v * dense[: n - j]) % p
    return out


def dirichlet_sum(c, base, s, order):
    """``sum_i c_i (-log b_i)**order * b_i**(-s)``."""
    logb = np.log(base)
    terms = c * np.exp(-s * logb)
    if order:
        terms = terms * (-logb) ** order
    return complex(terms.sum())


def expsum(c, freq, ys):
    """``out_j = sum_i c_i exp(-freq_i * y_j)``."""
    out = np.empty(ys.shape[0], dtype=np.float64)
    step = max(1, _CHUNK // max(1, freq.shape[0]))
    for lo in range(0, ys.shape[0], step):
        block = ys[lo : lo + step]
        out[lo : lo + step] = np.exp(-np.outer(block, freq)) @ c
    return out


def horner(coeffs, qs):
    """``sum_n coeffs[n] q**n`` at every ``q`` in ``qs``."""
    acc = np.zeros(qs.shape[0], dtype=np.complex128)
    for a in coeffs[::-1]:
        acc = acc * qs + a
    return acc


def bessel_k_trapezoid(nu, xs, hs, rel_cut):
    """Trapezoid rule with step ``hs[i]`` for ``int_0^inf exp(-x cosh t) cosh(nu t) dt``.

    The integrand is scaled by ``exp(x)`` while summing so nothing underflows.
    Steps continue past the peak until the magnitude bound
    ``exp(-x (cosh t - 1) + |Re nu| t)`` drops below ``rel_cut`` times the
    largest term seen.
    """
    out = np.empty(xs.shape[0], dtype=np.complex128)
    a = abs(nu.real)
    for i in range(xs.shape[0]):
        x = xs[i]
        h = hs[i]
        # integrand bound peaks where x sinh t = |Re nu|
        t_peak = np.arcsinh(a / x)
        total = 0.5 + 0j
        biggest = 1.0
        j = 1
        while True:
            # batches of 64 steps
            t = h * np.arange(j, j + 64)
            damp = -x * (np.cosh(t) - 1.0)
            total += (np.exp(damp) * np.cosh(nu * t)).sum()
            env = np.exp(damp + a * t)
            biggest = max(biggest, float(env.max()))
            j += 64
            if t[-1] > t_peak and env[-1] < rel_cut * biggest:
                break
        out[i] = h * total * np.exp(-x)
    return out


def coprime_disk_sum(x, y, s, bound):
    """``sum |c z + d|**(-2 s)`` over ``c >= 1``, ``gcd(c, d) = 1``, ``c^2+d^2 <= bound^2``."""
    total = 0j
    b2 = bound * bound
    for c in range(1, bound + 1):
        dmax = int(np.sqrt(b2 - c * c))
        d = np.arange(-dmax, dmax + 1, dtype=np.int64)
        d = d[np.gcd(d, c) == 1]
        q = (c * x + d) ** 2 + (c * y) ** 2
        total += np.exp(-s * np.log(q)).sum()
    return complex(total)
