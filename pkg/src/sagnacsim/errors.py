"""Exception types shared across the package."""


class SagnacsimError(ValueError):
    """Base class for all domain errors raised by this package."""


class InvalidDimensionError(SagnacsimError):
    """Qudit dimension is out of range or unsupported."""


class DimensionMismatchError(SagnacsimError):
    """Operands describe qudits of different dimensions."""


class NormalizationError(SagnacsimError):
    """State amplitudes are not normalized within tolerance."""


class NonDiagonalError(SagnacsimError):
    """Jones matrix is not diagonal up to a global phase."""


class ScheduleError(SagnacsimError):
    """Phase schedule violates an invariant or is evaluated out of range."""


class FitError(SagnacsimError):
    """Fringe data cannot be fitted (too few points, no span, ...)."""


class LowVisibilityError(SagnacsimError):
    """Fringe visibility too low for a meaningful phase extraction."""


class DegenerateLoopError(SagnacsimError):
    """Total phase of a state loop is undefined (orthogonal endpoints)."""


class ConfigError(SagnacsimError):
    """Invalid experiment or campaign configuration."""
