from typing import Any, Optional, Sequence

from mirrorwell.logging_config import get_logger

logger = get_logger(__name__)


class Error(Exception):
    """Base exception for mirrorwell errors.

    Every error carries a stable error code used by the CLI exit-code
    mapping and by the HTTP error bodies.

    Args:
        message: A descriptive error message.
        error_code: An optional code categorizing the error.

    Examples:
        >>> try:
        ...     raise Error("Something went wrong", "GENERAL_ERROR")
        ... except Error as e:
        ...     print(e.error_code)
        GENERAL_ERROR
    """

    exit_code = 1

    def __init__(self, message: str, error_code: Optional[str] = None):
        self.message = message
        self.error_code = error_code
        logger.warning(
            "Exception created",
            exception_type=self.__class__.__name__,
            message=message,
            error_code=error_code,
        )
        super().__init__(self.message)


class ValidationError(Error):
    """Raised when a user supplied value is malformed or out of range.

    Maps to CLI exit code 2 and HTTP status 400.

    Examples:
        >>> raise ValidationError("count must be positive")
    """

    exit_code = 2

    def __init__(self, message: str = "Input validation failed", error_code: str = "VALIDATION_ERROR"):
        super().__init__(message, error_code)


class ParameterRangeError(ValidationError):
    """Raised when a numeric parameter leaves its supported window.

    Examples:
        >>> raise ParameterRangeError("separation d=7 outside [0, 6]")
    """

    def __init__(self, message: str = "Parameter outside supported range"):
        super().__init__(message, "PARAMETER_RANGE")


class UnknownPotentialError(ValidationError):
    """Raised for a potential name that is not in the catalog."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unknown potential '{name}'", "UNKNOWN_POTENTIAL")


class NumericalError(Error):
    """Base class for failures of a numerical procedure.

    Maps to CLI exit code 3 and HTTP status 422.
    """

    exit_code = 3

    def __init__(self, message: str = "Numerical procedure failed", error_code: str = "NUMERICAL_ERROR"):
        super().__init__(message, error_code)


class ConvergenceError(NumericalError):
    """Raised when a series or an iteration does not converge.

    Examples:
        >>> raise ConvergenceError("1F1 series did not converge after 500 terms")
    """

    def __init__(self, message: str = "Iteration did not converge"):
        super().__init__(message, "CONVERGENCE_ERROR")


class WindowExhaustedError(NumericalError):
    """Raised when an energy window holds fewer eigenvalues than requested.

    Attributes:
        records: The eigenvalues that were found before the window ran out.
    """

    def __init__(self, message: str, records: Optional[Sequence[Any]] = None):
        self.records = list(records or [])
        super().__init__(message, "WINDOW_EXHAUSTED")


class GridResolutionError(NumericalError):
    """Raised when a finite-difference grid cannot resolve the requested levels."""

    def __init__(self, message: str = "Grid too coarse for requested levels"):
        super().__init__(message, "GRID_RESOLUTION")


class DecayError(NumericalError):
    """Raised when a sampled wavefunction has not decayed at the range ends."""

    def __init__(self, message: str = "Wavefunction does not decay at the boundaries"):
        super().__init__(message, "INSUFFICIENT_DECAY")


class RootIsolationError(NumericalError):
    """Raised when a polynomial root scan cannot isolate the expected roots."""

    def __init__(self, message: str = "Root isolation failed"):
        super().__init__(message, "ROOT_ISOLATION")
