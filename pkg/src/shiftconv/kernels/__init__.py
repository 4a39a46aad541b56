"""Hot numeric loops, numba-compiled when available.

Set ``SHIFTCONV_NO_NUMBA=1`` before import to force the pure-numpy path.
``BACKEND`` reports which one is active; both implementations stay
importable as ``kernels.numpy_impl`` / ``kernels.numba_impl`` (the latter is
``None`` when numba is missing) so they can be compared directly.
"""

import os

from . import _numpy as numpy_impl

numba_impl = None
if os.environ.get("SHIFTCONV_NO_NUMBA", "").strip() not in ("1", "true", "yes"):
    try:
        from . import _numba as numba_impl
    except ImportError:  # pragma: no cover - numba is an optional speedup
        numba_impl = None

_impl = numba_impl if numba_impl is not None else numpy_impl
BACKEND = "numba" if numba_impl is not None else "numpy"

mul_sparse_mod = _impl.mul_sparse_mod
dirichlet_sum = _impl.dirichlet_sum
expsum = _impl.expsum
horner = _impl.horner
bessel_k_trapezoid = _impl.bessel_k_trapezoid
coprime_disk_sum = _impl.coprime_disk_sum

__all__ = [
    "BACKEND",
    "numpy_impl",
    "numba_impl",
    "mul_sparse_mod",
    "dirichlet_sum",
    "expsum",
    "horner",
    "bessel_k_trapezoid",
    "coprime_disk_sum",
]
