"""Exception types raised by the numerical layers.

Exit-code mapping used by the CLI: configuration problems -> 2,
numeric singularities -> 3, quadrature/calibration failures -> 4,
verification failures -> 5.
"""


class WavefieldError(Exception):
    """Base class for all package-specific errors."""


class SchemaError(WavefieldError):
    """Config does not match the documented schema. Carries the field path."""

    def __init__(self, path, message=""):
        self.path = path
        super().__init__(f"{path}: {message}" if message else path)


class RangeError(WavefieldError):
    """Config value is syntactically fine but out of the accepted range."""


class PoleError(WavefieldError):
    """Hyperbolic-identity argument sits on a pole of tanh/cosh."""


class InvalidProfile(WavefieldError):
    """Plane-wave profile kind or parameters are unusable."""


class DivisionByZero(WavefieldError):
    """A light-cone denominator dot(k, pL) vanished where it must not."""


class KernelSingularity(WavefieldError):
    """Proper-time kernel evaluated on (or too close to) a caustic."""


class ContourCaustic(WavefieldError):
    """Rotated proper-time ray passed unexpectedly close to a caustic."""


class ResonantQ(WavefieldError):
    """1 + exp(Q) is not invertible on the transverse subspace."""


class ResonantDenominator(WavefieldError):
    """Closed-form phase-integral denominator vanished (resonant profile)."""


class QuadratureFailure(WavefieldError):
    """Adaptive quadrature exhausted its node budget or hit a non-finite value."""

    def __init__(self, message, error_estimate=None, nodes=None):
        self.error_estimate = error_estimate
        self.nodes = nodes
        super().__init__(message)


class StepCalibrationFailure(WavefieldError):
    """Finite-difference step calibration could not agree across step sizes."""


class SingularForm(WavefieldError):
    """Time-sliced Gaussian form is singular (caustic hit at finite N)."""


class VerificationFailure(WavefieldError):
    """One or more verification checks failed."""
