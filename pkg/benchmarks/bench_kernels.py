"""Time the numba kernels against their numpy fallbacks on representative inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel is called once untimed (numba compiles on first call, and the
cache may already hold it), then ``--repeat`` times; the best time is kept.
Results from both backends are compared before timing.
"""

import argparse
import time

import numpy as np

from shiftconv.kernels import numba_impl, numpy_impl


def _cases():
    rng = np.random.default_rng(0)
    p = 2147483629
    dense = rng.integers(0, p, 20001, dtype=np.int64)
    k = np.arange(0, 200)
    idx = (k * (k + 1) // 2).astype(np.int64)
    idx = idx[idx <= 20000]
    val = rng.integers(0, p, idx.shape[0], dtype=np.int64)
    c = rng.standard_normal(2000)
    base = np.arange(1, 2001, dtype=np.float64) + 0.5
    freq = 2 * np.pi * (2 * np.arange(1, 2001) + 1.0)
    ys = np.linspace(0.01, 2.0, 3000)
    coeffs = rng.standard_normal(400)
    qs = 0.3 * np.exp(2j * np.pi * rng.random(2000))
    xs = np.linspace(0.1, 40.0, 500)
    hs = np.minimum(0.1, 0.5 / np.sqrt(np.sqrt(xs**2 + 9.0)))
    return {
        "mul_sparse_mod": (dense, idx, val, p),
        "dirichlet_sum": (c, base, 2.5 + 1.3j, 0),
        "expsum": (c, freq, ys),
        "horner": (coeffs, qs),
        "bessel_k_trapezoid": (3.0 + 0.5j, xs, hs, 1e-18),
        "coprime_disk_sum": (0.2, 1.1, 2.0 + 0j, 300),
    }


def _best(fn, args, repeat):
    fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if numba_impl is None:
        print("numba unavailable (or disabled by SHIFTCONV_NO_NUMBA): nothing to compare")
        return 1
    print(f"{'kernel':<20} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}  agree")
    for name, case in _cases().items():
        f_np = getattr(numpy_impl, name)
        f_nb = getattr(numba_impl, name)
        a, b = np.asarray(f_np(*case)), np.asarray(f_nb(*case))
        agree = np.allclose(a, b, rtol=1e-10, atol=0) if a.dtype.kind != "i" else np.array_equal(a, b)
        t_np = _best(f_np, case, args.repeat)
        t_nb = _best(f_nb, case, args.repeat)
        print(f"{name:<20} {1e3 * t_np:12.3f} {1e3 * t_nb:12.3f} {t_np / t_nb:9.1f}  {agree}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
