"""numba-compiled twins of the kernels in ``_numpy``."""

import numpy as np
from numba import njit

_opts = dict(cache=True, nogil=True)


@njit(**_opts)
def mul_sparse_mod(dense, idx, val, p):
    n = dense.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for k in range(idx.shape[0]):
        j = idx[k]
        if j >= n:
            break
        v = val[k]
        for m in range(n - j):
            out[j + m] = (out[j + m] + v * dense[m]) % p
    return out


@njit(**_opts)
def dirichlet_sum(c, base, s, order):
    total = 0j
    for i in range(c.shape[0]):
        lb = np.log(base[i])
        term = c[i] * np.exp(-s * lb)
        if order:
            term *= (-lb) ** order
        total += term
    return total


@njit(**_opts)
def expsum(c, freq, ys):
    out = np.empty(ys.shape[0], dtype=np.float64)
    for j in range(ys.shape[0]):
        acc = 0.0
        y = ys[j]
        for i in range(c.shape[0]):
            acc += c[i] * np.exp(-freq[i] * y)
        out[j] = acc
    return out


@njit(**_opts)
def horner(coeffs, qs):
    out = np.empty(qs.shape[0], dtype=np.complex128)
    for j in range(qs.shape[0]):
        q = qs[j]
        acc = 0j
        for n in range(coeffs.shape[0] - 1, -1, -1):
            acc = acc * q + coeffs[n]
        out[j] = acc
    return out


@njit(**_opts)
def bessel_k_trapezoid(nu, xs, hs, rel_cut):
    out = np.empty(xs.shape[0], dtype=np.complex128)
    a = abs(nu.real)
    for i in range(xs.shape[0]):
        x = xs[i]
        h = hs[i]
        t_peak = np.arcsinh(a / x)
        total = 0.5 + 0j
        biggest = 1.0
        j = 1
        while True:
            t = h * j
            damp = -x * (np.cosh(t) - 1.0)
            total += np.exp(damp) * np.cosh(nu * t)
            e = np.exp(damp + a * t)
            if e > biggest:
                biggest = e
            if t > t_peak and e < rel_cut * biggest:
                break
            j += 1
        out[i] = h * total * np.exp(-x)
    return out


@njit(**_opts)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(**_opts)
def coprime_disk_sum(x, y, s, bound):
    total = 0j
    b2 = bound * bound
    for c in range(1, bound + 1):
        dmax = int(np.sqrt(b2 - c * c))
        cy2 = (c * y) ** 2
        for d in range(-dmax, dmax + 1):
            if _gcd(c, d) != 1:
                continue
            u = c * x + d
            total += np.exp(-s * np.log(u * u + cy2))
    return total
