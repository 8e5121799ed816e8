"""Exception types raised by the library.

All derive from ``ValueError`` so callers that only care about bad input can
catch that.
"""


class UnsupportedChargeError(ValueError):
    """Operation defined only on a particular charge sector."""


class InhomogeneousStateError(ValueError):
    """A fermionic state mixes several charges where one is required."""


class DegenerateFrameError(ValueError):
    """A Grassmannian frame does not have full row rank."""


class IncompatibleCoefficientsError(ValueError):
    """Two operators carry coefficients from different rings."""


class InvalidOperatorError(ValueError):
    """Operator is not of the required (monic, normalized) shape."""


class VacuumNormalizationError(ValueError):
    """A tau function vanishes at the origin, so the wave function is undefined."""
