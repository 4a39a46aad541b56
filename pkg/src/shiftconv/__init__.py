"""Shifted convolutions a(n) a(n+r) of cusp-form coefficients and the identities around them."""

__version__ = "0.1.0"

from .errors import CertificationError, PoleError, QuadratureError, TruncationError
from .forms import CuspForm, delta_form, eigenforms, miller_basis, zero_form
from .qseries import QSeries

__all__ = [
    "__version__",
    "CertificationError",
    "PoleError",
    "QuadratureError",
    "TruncationError",
    "CuspForm",
    "QSeries",
    "delta_form",
    "eigenforms",
    "miller_basis",
    "zero_form",
]
