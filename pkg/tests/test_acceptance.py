"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line; pytest prints them in the
terminal summary, and ``python tests/test_acceptance.py`` prints them directly.
"""

import math
import random
import sys
import time

import numpy as np

from shiftconv.dirichlet import UnfoldingJob, unfolding_check, unfolding_check_2d
from shiftconv.eisenstein import (
    bessel_k,
    eisenstein_direct,
    eisenstein_fourier,
    functional_eq_check,
)
from shiftconv.forms import delta_form, eigenforms
from shiftconv.qseries import eta_expansion, qs_pow
from shiftconv.relations import (
    SupportedSeq,
    only_zero_solution,
    pm_relation_reduction,
    theorem_bar_demo,
    vandermonde_det,
    vandermonde_product,
)
from shiftconv.shifted import corollary_hypothesis, scan
from shiftconv.sieve import twist_average_check
from shiftconv.specfun import delta_r, pm_polynomial

RESULTS = []


def record(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    return ok


_SCAN = {}


def _scan_rows():
    if not _SCAN:
        d = delta_form(10010)
        for row in scan(d, range(1, 11), [1000, 10000]):
            _SCAN[(row[2], row[3])] = row
    return _SCAN


def test_01_coefficient_engine():
    t0 = time.perf_counter()
    d = delta_form(20000)
    elapsed = time.perf_counter() - t0
    oracle = qs_pow(eta_expansion(10), 24).shift(1)
    spots = all(d.a(n) == oracle[n] for n in (2, 3, 6)) and (d.a(2), d.a(3), d.a(6)) == (-24, 252, -6048)
    rng = random.Random(1)
    pairs = 0
    mult_ok = True
    while pairs < 200:
        m, n = rng.randint(2, 140), rng.randint(2, 140)
        if math.gcd(m, n) != 1:
            continue
        pairs += 1
        mult_ok &= d.a(m * n) == d.a(m) * d.a(n)
    ok = elapsed <= 10 and spots and mult_ok
    assert record(1, ok, f"tau to 2e4 in {elapsed:.2f}s, spot values {spots}, 200 coprime pairs {mult_ok}")


def test_02_nonvanishing_counts():
    rows = _scan_rows()
    worst = min(rows[(r, 10000)][5] for r in range(1, 11))
    monotone = all(rows[(r, 1000)][5] <= rows[(r, 10000)][5] for r in range(1, 11))
    ok = worst >= 0.95 * 10000 and monotone
    assert record(2, ok, f"min count_nonzero at M=1e4 over r<=10: {worst}; monotone in M: {monotone}")


def test_03_both_signs():
    rows = _scan_rows()
    pos = min(rows[(r, 10000)][6] for r in range(1, 11))
    neg = min(rows[(r, 10000)][7] for r in range(1, 11))
    ok = pos >= 1000 and neg >= 1000
    assert record(3, ok, f"min count_positive {pos}, min count_negative {neg}")


def test_04_corollary_hypotheses():
    a2 = {}
    for k in (12, 16, 18, 20, 22, 24, 26):
        for f in eigenforms(k, 10):
            a2[f.label] = f.a(2)
    nonzero = all(v != 0 for v in a2.values()) and len(a2) == 8
    d = delta_form(101)
    shifts = all(corollary_hypothesis(d, r) for r in range(1, 101))
    assert record(4, nonzero and shifts, f"a(2) != 0 for {len(a2)} eigenforms: {nonzero}; a(r+1) != 0, r<=100: {shifts}")


def test_05_unfolding_identity():
    d = delta_form(201)
    details = []
    ok = True
    for s in (2.5, 2 + 1.3j):
        t0 = time.perf_counter()
        res = unfolding_check(UnfoldingJob(d, 1, s, 200, 1e-10))
        dt = time.perf_counter() - t0
        ok &= res.rel_err <= 1e-6 and dt <= 5
        details.append(f"s={s}: rel_err {res.rel_err:.1e} in {dt:.2f}s")
    gap = unfolding_check_2d(UnfoldingJob(d, 1, 2.5, 200, 1e-10), 512)
    ok &= gap <= 1e-10
    details.append(f"2D gap {gap:.1e}")
    assert record(5, ok, "; ".join(details))


def test_06_hypergeometric_polynomial():
    nonvanishing = True
    for m in range(0, 21):
        for k in range(4, 31):
            try:
                lam = pm_polynomial(m, k).lambda_
            except ArithmeticError:
                nonvanishing = False
                continue
            nonvanishing &= all(x != 0 for x in lam)
    rng = random.Random(6)
    residues = []
    for _ in range(50):
        r = rng.randint(1, 10)
        support = rng.sample(range(1, 50), rng.randint(1, 10))
        c = SupportedSeq(r, {n: rng.randint(-10**6, 10**6) or 1 for n in support})
        residues.append(pm_relation_reduction(c, rng.randint(0, 20), rng.randint(4, 30)))
    zero = all(x == 0 for x in residues)
    assert record(6, nonvanishing and zero, f"lambda != 0 for m<=20, 4<=k<=30: {nonvanishing}; 50 reductions exactly 0: {zero}")


def test_07_vandermonde():
    only_zero = all(only_zero_solution(n, r) for n in range(1, 13) for r in range(1, 11))
    dets = all(
        vandermonde_det(list(range(1, n + 1)), r) == vandermonde_product(list(range(1, n + 1)), r)
        for n in range(1, 13)
        for r in range(1, 11)
    )
    assert record(7, only_zero and dets, f"only_zero_solution n_t<=12, r<=10: {only_zero}; det = product: {dets}")


def test_08_theorem_bar():
    rng = random.Random(8)
    bad = 0
    for _ in range(1000):
        t = rng.randint(1, 10)
        r = rng.randint(1, 10)
        c = SupportedSeq(r, {n: rng.choice([-1, 1]) * rng.randint(1, 10**4)
                             for n in rng.sample(range(1, 200), t)})
        v = theorem_bar_demo(c)
        if not (v.consistent_only_with_zero and v.witness_nu is not None and v.witness_nu <= t):
            bad += 1
    assert record(8, bad == 0, f"1000 random nonzero sequences, {bad} without a witness")


def test_09_sieve():
    d = delta_form(200)
    zs = [0.5j, 0.3 + 0.7j, -0.2 + 1.1j]
    worst = 0.0
    for m in (2, 4, 6, 10):
        for n0 in range(1, m + 1):
            worst = max(worst, twist_average_check(d, n0, m, zs, 200))
    literal = twist_average_check(d, 1, 4, zs, 200, normalization="totient")
    ok = worst <= 1e-8 and literal > 1e-8
    assert record(9, ok, f"max rel_err {worst:.1e} (1/m); totient normalization at m=4: {literal:.2f} (must fail)")


def test_10_eisenstein():
    rng = random.Random(10)
    fd = 0.0
    for _ in range(10):
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.0))
        s = complex(rng.uniform(1.2, 3.0), rng.uniform(-5, 5))
        F = eisenstein_fourier(z, s).value
        D = eisenstein_direct(z, s).value
        fd = max(fd, abs(F - D) / abs(F))
    fe = 0.0
    for _ in range(5):
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.6, 2.0))
        s = complex(rng.uniform(0.05, 0.95), rng.uniform(-8, 8))
        fe = max(fe, functional_eq_check(z, s))
    kb = 0.0
    for x in np.linspace(0.1, 25.0, 10):
        exact = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
        kb = max(kb, abs(bessel_k(0.5, x) - exact) / exact)
    ok = fd <= 1e-6 and fe <= 1e-8 and kb <= 1e-10
    assert record(10, ok, f"Fourier vs direct {fd:.1e}; functional equation {fe:.1e}; K_1/2 {kb:.1e}")


def test_11_delta_r_decay():
    vals = [abs(delta_r(0.4 + 3j, n, 12, 1)) for n in (10, 100, 1000)]
    ok = vals[0] > vals[1] > vals[2]
    assert record(11, ok, "|Delta_1| at n=10,100,1000: " + ", ".join(f"{v:.3e}" for v in vals))


def main():
    failed = 0
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        before = len(RESULTS)
        try:
            t()
        except AssertionError:
            failed += 1
        except Exception as exc:  # report and keep going
            failed += 1
            RESULTS.append(f"{t.__name__}: ERROR {type(exc).__name__}: {exc}")
        for line in RESULTS[before:]:
            print(line)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
