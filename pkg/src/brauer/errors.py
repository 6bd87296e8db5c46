"""Exception hierarchy shared by the library, the services and the CLI."""


class BrauerError(Exception):
    """Base class for every error raised by this project."""

    exit_code = 1


class ParseError(BrauerError):
    """Malformed input: bad JSON, bad ring string, bad flag value."""

    exit_code = 2


class SemanticError(BrauerError, ValueError):
    """Well-formed input that does not make sense (strand mismatch, violated hypothesis)."""

    exit_code = 3


class ComplexError(SemanticError):
    """A matrix family that is not a chain complex (shape mismatch or d^2 != 0)."""


class BudgetExceeded(BrauerError):
    """A computation would exceed the configured size ceiling."""

    exit_code = 4
