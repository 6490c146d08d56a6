"""Exception hierarchy shared by every module."""


class PowerIndexError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PowerIndexError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapacityError(PowerIndexError):
    """The requested computation exceeds a configured enumeration or memory bound."""


class HypothesisError(PowerIndexError, ValueError):
    """An axiom instance does not satisfy the axiom's hypotheses."""


class ParseError(PowerIndexError, ValueError):
    """Malformed input file; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantError(PowerIndexError, AssertionError):
    """An internal consistency check failed."""
