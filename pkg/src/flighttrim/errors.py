"""Exception hierarchy shared by all flighttrim modules."""


class TrimError(Exception):
    """Base class for every error raised by flighttrim."""


class ZeroVectorError(TrimError, ValueError):
    """The direction of a zero-length vector was requested."""


class ModelEvaluationError(TrimError, ArithmeticError):
    """An aerodynamic model returned a non-finite coefficient."""


class ParseError(TrimError, ValueError):
    """Malformed polar file. ``line`` is 1-based, or None when unknown."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(TrimError, ValueError):
    """Well-formed input that violates a data invariant."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RangeError(TrimError, ValueError):
    """A polar table does not have the coverage an operation requires."""


class SymmetryVerificationError(TrimError, ValueError):
    """A model fails the checker for its declared symmetry class."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class CdOrderingError(TrimError, ValueError):
    """The stall-condition test needs c_D(pi) > c_D(0)."""


class PreconditionError(TrimError, ValueError):
    """Inputs fall outside the domain where a diagnostic is defined."""


class ConfigError(TrimError, ValueError):
    """Invalid scenario configuration."""
