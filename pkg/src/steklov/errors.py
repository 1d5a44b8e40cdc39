"""Exception hierarchy shared by every module of the package."""


class SteklovError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SteklovError, ValueError):
    """An argument lies outside the supported range of a routine."""


class ConfigError(SteklovError, ValueError):
    """Invalid or inconsistent run configuration."""


class ExpressionError(ConfigError):
    """Syntax or evaluation error in a medium expression.

    ``offset`` is the 1-based byte offset of the offending token when the
    error comes from the parser, ``None`` otherwise.
    """

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class NumericalError(SteklovError, ArithmeticError):
    """A numerical procedure failed (non-convergence, breakdown)."""


class ResonanceError(NumericalError):
    """The wavenumber sits on, or too close to, an interior eigenvalue.

    Raised when the Galerkin matrix ``A`` (or a separation-of-variables
    matching system) is numerically singular.
    """


class PoleError(NumericalError):
    """A closed-form eigenvalue formula hit a zero of its denominator."""


class BracketError(SteklovError, ValueError):
    """Root bracket without a sign change."""


class InconclusiveError(NumericalError):
    """A study could not reach a meaningful result (e.g. truncated reference)."""
