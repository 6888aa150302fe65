"""Exception hierarchy shared by the library and the command line front end."""

from __future__ import annotations


class MindispError(Exception):
    """Base class for all errors raised by this package."""


class MalformedBoxError(MindispError, ValueError):
    pass


class DimensionMismatchError(MindispError, ValueError):
    pass


class ParseError(MindispError, ValueError):
    """A point-set or family file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ParameterError(MindispError, ValueError):
    pass


class ValidityError(MindispError, ValueError):
    """A parameter violates a validity inequality; ``inequality`` quotes it."""

    def __init__(self, message: str, inequality: str = ""):
        super().__init__(f"{message} (requires {inequality})" if inequality else message)
        self.inequality = inequality


class EpsilonValidityError(ValidityError):
    pass


class DimensionValidityError(ValidityError):
    pass


class DomainError(MindispError, ValueError):
    pass


class BudgetExhausted(MindispError):
    """Search ran out of nodes.  ``best`` carries the best partial result."""

    def __init__(self, message: str, best=None, nodes: int = 0):
        super().__init__(message)
        self.best = best
        self.nodes = nodes
