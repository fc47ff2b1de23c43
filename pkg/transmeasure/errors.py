"""Error types and exit-code classification for transmeasure."""


class TransmeasureError(Exception):
    """Base class for every error raised by transmeasure."""


class UndecidedComparison(TransmeasureError):
    """A certified comparison could not be settled at the current precision.

    Raised inside precision-escalation loops; callers outside the loop see
    `InconclusivePrecisionError` instead.
    """


class InconclusivePrecisionError(TransmeasureError):
    """Raised when the maximum working precision is exhausted."""

    def __init__(self, message: str, *, max_bits: int | None = None):
        super().__init__(message)
        self.max_bits = max_bits


class InvalidInputError(TransmeasureError, ValueError):
    """Raised when an input violates a documented precondition."""


class ReducibleInputError(InvalidInputError):
    """Raised when a polynomial expected to be irreducible is not."""


class HypothesisError(InvalidInputError):
    """Raised when a theorem hypothesis is certified to fail."""


class CapExceededError(TransmeasureError):
    """Raised when a search space or matrix exceeds its configured cap."""


class CounterexampleError(TransmeasureError):
    """Raised when a certified computation contradicts a proven statement."""


class ConfigError(TransmeasureError):
    """Raised for invalid command-line or config-file settings."""


EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def exit_code_for(error: BaseException) -> int:
    """Return the CLI exit code for an exception escaping a command."""
    if isinstance(error, InconclusivePrecisionError):
        return EXIT_INCONCLUSIVE
    if isinstance(error, CounterexampleError):
        return EXIT_CHECK_FAILED
    if isinstance(error, (ConfigError, InvalidInputError, CapExceededError)):
        return EXIT_USAGE
    return EXIT_CHECK_FAILED


__all__ = [
    "CapExceededError",
    "ConfigError",
    "CounterexampleError",
    "EXIT_CHECK_FAILED",
    "EXIT_INCONCLUSIVE",
    "EXIT_OK",
    "EXIT_USAGE",
    "HypothesisError",
    "InconclusivePrecisionError",
    "InvalidInputError",
    "ReducibleInputError",
    "TransmeasureError",
    "UndecidedComparison",
    "exit_code_for",
]
