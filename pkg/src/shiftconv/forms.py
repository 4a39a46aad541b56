"""Level-one modular forms as exact q-expansions.

Constructors for Delta, the holomorphic Eisenstein series E_k, the Miller
basis of S_k(SL2(Z)), Hecke operators and normalized eigenforms, plus a
plain-text file format for cusp forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod

import numpy as np

from . import kernels
from .errors import TruncationError
from .qseries import QSeries, eta_cubed_terms, eta_expansion, qs_pow
from .quadratic import QuadraticNumber, format_exact, parse_exact, squarefree_split

__all__ = [
    "CuspForm",
    "bernoulli",
    "divisor_power_sums",
    "dim_cusp_forms",
    "delta_form",
    "tau_modular",
    "eisenstein_qexp",
    "miller_basis",
    "hecke_operator",
    "eigenforms",
    "growth_constant",
    "zero_form",
    "dumps_form",
    "loads_form",
    "write_form",
    "read_form",
]


# -- basic arithmetic helpers -------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli(m):
    """Bernoulli number B_m (convention B_1 = -1/2), exact."""
    B = [Fraction(1)]
    for n in range(1, m + 1):
        acc = Fraction(0)
        binom = 1
        for j in range(n):
            acc += binom * B[j]
            binom = binom * (n + 1 - j) // (j + 1)
        B.append(-acc / (n + 1))
    return B[m]


def divisor_power_sums(N, e):
    """List ``s`` with ``s[n] = sigma_e(n)`` for ``1 <= n <= N`` (``s[0] = 0``)."""
    s = [0] * (N + 1)
    for d in range(1, N + 1):
        de = d**e
        for m in range(d, N + 1, d):
            s[m] += de
    return s


def dim_cusp_forms(k):
    """dim S_k(SL2(Z)) for even ``k``; zero for odd or tiny weights."""
    if k < 12 or k % 2:
        return 0
    return k // 12 - 1 if k % 12 == 2 else k // 12


# -- the cusp-form container ---------------------------------------------------


def _abs_upper(c):
    if isinstance(c, QuadraticNumber):
        return c.abs_upper()
    return abs(Fraction(c))


def growth_constant(series, weight):
    """Twice ``max_n |a(n)| / n^(k/2)`` over the stored coefficients (exact)."""
    half = weight // 2 if weight % 2 == 0 else Fraction(weight, 2)
    best = Fraction(0)
    for n in range(1, series.trunc_order + 1):
        a = series[n]
        if not a:
            continue
        if half == int(half):
            r = _abs_upper(a) / n ** int(half)
        else:  # odd weight: compare squares to stay rational
            r = Fraction(float(_abs_upper(a)) / n**half)
        if r > best:
            best = r
    return 2 * best


@dataclass(frozen=True)
class CuspForm:
    """A cusp form known through its truncated q-expansion.

    ``growth_const`` is a rational ``C`` with ``|a(n)| <= C n^(k/2)`` for all
    stored ``n``; it is computed (heuristically doubled) and checked at
    construction. It is zero only for the zero form.
    """

    weight: int
    series: QSeries
    level: int = 1
    label: str = "f"
    growth_const: Fraction = field(default=None)

    def __post_init__(self):
        if self.series[0] != 0:
            raise ValueError("a cusp form must have a(0) = 0")
        if self.level < 1:
            raise ValueError("level must be positive")
        if self.growth_const is None:
            object.__setattr__(self, "growth_const", growth_constant(self.series, self.weight))
        else:
            object.__setattr__(self, "growth_const", Fraction(self.growth_const))
            self._check_growth()

    def _check_growth(self):
        C = self.growth_const
        k = self.weight
        for n in range(1, self.trunc_order + 1):
            a = self.series[n]
            if a and _abs_upper(a) ** 2 > C * C * Fraction(n) ** k:
                raise ValueError(f"growth constant {C} violated at n = {n}")

    @property
    def trunc_order(self):
        return self.series.trunc_order

    def a(self, n):
        return self.series[n]

    def coefficients(self, start=1, stop=None):
        stop = self.trunc_order if stop is None else stop
        return self.series[start : stop + 1]

    def is_zero(self):
        return not any(self.series.coeffs)

    def truncate(self, N):
        return CuspForm(self.weight, self.series.truncate(N), self.level, self.label)


def zero_form(weight, N, label="zero"):
    return CuspForm(weight, QSeries.zero(N), 1, label)


# -- Delta ------------------------------------------------------------------------


def _is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=1)
def _crt_primes(count=24):
    out = []
    n = (1 << 31) - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 2
    return tuple(out)


def _crt(residues, primes):
    M = prod(primes)
    weights = []
    for p in primes:
        Mp = M // p
        weights.append(Mp * pow(Mp, -1, p))
    half = M // 2
    cols = [r.tolist() for r in residues]
    out = []
    for vals in zip(*cols):
        x = sum(v * w for v, w in zip(vals, weights)) % M
        out.append(x - M if x > half else x)
    return out


def tau_modular(N, check_primes=2):
    """tau(1..N) from (eta^3)^8 computed modulo word-size primes, then CRT.

    The prime count is sized from |tau(n)| <= d(n) n^(11/2) <= 2 n^6; the
    reconstruction is then confirmed against ``check_primes`` further primes,
    adding moduli until it is stable.
    """
    if N < 1:
        return []
    terms = eta_cubed_terms(N - 1)
    idx = np.array([j for j, _ in terms], dtype=np.int64)
    primes = _crt_primes()
    bound = 2 * N**6
    k = 1
    while prod(primes[:k]) <= 2 * bound + 1:
        k += 1

    def residues(p):
        val = np.array([c % p for _, c in terms], dtype=np.int64)
        dense = np.zeros(N, dtype=np.int64)
        dense[idx] = val
        for _ in range(7):
            dense = kernels.mul_sparse_mod(dense, idx, val, np.int64(p))
        return dense

    res = [residues(p) for p in primes[: k + check_primes]]
    while True:
        taus = _crt(res[:k], primes[:k])
        ok = all(
            all(t % p == int(r) for t, r in zip(taus, res[k + i].tolist()))
            for i, p in enumerate(primes[k : k + check_primes])
        )
        if ok:
            return taus
        k += 1
        if k + check_primes > len(primes):
            raise RuntimeError("CRT reconstruction of tau did not stabilize")
        res.append(residues(primes[k + check_primes - 1]))


def _delta_exact_series(N):
    return qs_pow(eta_expansion(N - 1), 24).shift(1)


def delta_form(N, method="modular"):
    """Delta = q prod(1-q^n)^24 to q^N; coefficients are tau(n), exact ints.

    ``method="modular"`` uses the compiled modular kernel; ``"exact"``
    multiplies exact power series (slower, used as a cross-check).
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if method == "modular":
        series = QSeries._raw([0] + tau_modular(N))
    elif method == "exact":
        series = _delta_exact_series(N)
    else:
        raise ValueError(f"unknown method {method!r}")
    return CuspForm(12, series, 1, "Delta")


# -- Eisenstein series and the Miller basis --------------------------------------


def eisenstein_qexp(k, N):
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, normalized constant term 1."""
    if k % 2 or k < 4:
        raise ValueError(f"E_k needs even k >= 4, got {k}")
    factor = -Fraction(2 * k) / bernoulli(k)
    sig = divisor_power_sums(N, k - 1)
    return QSeries([1] + [factor * sig[n] for n in range(1, N + 1)])


@lru_cache(maxsize=8)
def _delta_series(N):
    return _delta_exact_series(N) if N < 400 else QSeries._raw([0] + tau_modular(N))


def miller_basis(k, N):
    """Echelon basis of S_k: element i is q^(i+1) + O(q^(d+1)) in the first d slots."""
    if k % 2:
        raise ValueError("odd weight has no level-one forms")
    d = dim_cusp_forms(k)
    if d == 0:
        return []
    if N < d:
        raise TruncationError(f"need trunc >= {d} to separate the basis", required=d)
    delta = _delta_series(N)
    E4 = eisenstein_qexp(4, N)
    E6 = eisenstein_qexp(6, N)
    rows = []
    for i in range(1, d + 1):
        rest = k - 12 * i
        c = 1 if rest % 4 else 0
        b = (rest - 6 * c) // 4
        f = qs_pow(delta, i)
        if b:
            f = f * qs_pow(E4, b)
        if c:
            f = f * E6
        rows.append(f)
    # rows[i] starts at q^(i+1) with coefficient 1; clear above-diagonal entries
    for i in range(d - 1, -1, -1):
        for j in range(i):
            c = rows[j][i + 1]
            if c:
                rows[j] = rows[j] - rows[i].scale(c)
    return rows


def hecke_operator(f, m, n_out=None):
    """T_m f: coefficient n is sum_{d | gcd(m, n)} d^(k-1) a(mn/d^2)."""
    if m < 1:
        raise ValueError("m must be positive")
    N_f = f.trunc_order
    if n_out is None:
        n_out = N_f // m
    if m * n_out > N_f:
        raise TruncationError(
            f"T_{m} to q^{n_out} needs the form to q^{m * n_out}, have q^{N_f}",
            required=m * n_out,
        )
    k = f.weight
    a = f.series
    out = []
    for n in range(n_out + 1):
        g = gcd(m, n)
        acc = 0
        for d in range(1, g + 1):
            if g % d == 0:
                acc = acc + d ** (k - 1) * a[m * n // (d * d)]
        out.append(acc)
    return QSeries(out)


def _eigen_check(g, lam, weight):
    form = CuspForm(weight, g)
    T2 = hecke_operator(form, 2)
    n = T2.trunc_order
    if T2 != g.truncate(n).scale(lam):
        raise ArithmeticError("constructed form is not a T_2 eigenform")


def eigenforms(k, N):
    """Normalized Hecke eigenforms of S_k (dimension at most 2, exact)."""
    d = dim_cusp_forms(k)
    if d == 0:
        if k % 2:
            raise ValueError("odd weight")
        return []
    if d > 2:
        raise ValueError(f"dim S_{k} = {d} > 2 is not supported in exact mode")
    N_basis = max(N, 2 * d)
    basis = miller_basis(k, N_basis)
    if d == 1:
        f = basis[0].truncate(N)
        return [CuspForm(k, f, 1, f"k{k}")]
    # T_2 on the echelon basis: column j holds the first d coefficients of T_2 f_j
    M = [[None, None], [None, None]]
    for j, fj in enumerate(basis):
        t = hecke_operator(CuspForm(k, fj.truncate(2 * d)), 2)
        M[0][j], M[1][j] = Fraction(t[1]), Fraction(t[2])
    tr = M[0][0] + M[1][1]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    disc = tr * tr - 4 * det
    num, den = disc.numerator, disc.denominator
    if num < 0:
        raise ArithmeticError("Hecke operator with non-real spectrum")
    # sqrt(disc) = sqrt(num*den)/den = (f/den) sqrt(D)
    f_sq, D = squarefree_split(num * den) if num else (0, 1)
    if D == 1:
        root = Fraction(f_sq, den)
        lams = [tr / 2 + root / 2, tr / 2 - root / 2]
    else:
        half = Fraction(f_sq, 2 * den)
        lams = [QuadraticNumber.make(tr / 2, half, D), QuadraticNumber.make(tr / 2, -half, D)]
    out = []
    for sign, lam in zip("ab", lams):
        if M[0][1] != 0:
            c = (lam - M[0][0]) / M[0][1]
        else:
            c = M[1][0] / (lam - M[1][1])
        g = (basis[0] + basis[1].scale(c)).truncate(N)
        _eigen_check(g, lam, k)
        out.append(CuspForm(k, g, 1, f"k{k}{sign}"))
    return out


# -- text format ------------------------------------------------------------------


def dumps_form(f):
    """Header ``weight k level N trunc T``, then a(0..T), one per line."""
    lines = [f"weight {f.weight} level {f.level} trunc {f.trunc_order}"]
    lines.extend(format_exact(c) for c in f.series.coeffs)
    return "\n".join(lines) + "\n"


def loads_form(text, label="f"):
    lines = text.strip("\n").split("\n")
    head = lines[0].split()
    if len(head) != 6 or head[0::2] != ["weight", "level", "trunc"]:
        raise ValueError(f"bad form header: {lines[0]!r}")
    k, level, T = int(head[1]), int(head[3]), int(head[5])
    body = lines[1:]
    if len(body) != T + 1:
        raise ValueError(f"header says trunc {T} but file has {len(body)} coefficients")
    series = QSeries([parse_exact(s) for s in body])
    return CuspForm(k, series, level, label)


def write_form(f, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_form(f))


def read_form(path, label=None):
    import os

    if label is None:
        label = os.path.splitext(os.path.basename(str(path)))[0]
    with open(path, encoding="utf-8") as fh:
        return loads_form(fh.read(), label)
