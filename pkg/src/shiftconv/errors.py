"""Exception types shared across the package."""


class TruncationError(ValueError):
    """A coefficient or operation needs more terms than a series carries."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class PoleError(ValueError):
    """Evaluation requested at (or too close to) a pole."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class CertificationError(ValueError):
    """A truncation tail could not be bounded below the requested level."""
