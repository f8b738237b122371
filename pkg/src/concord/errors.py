"""Exception hierarchy shared by the library and the command line.

Each class carries the process exit code the CLI reports for it.
"""


class ConcordError(Exception):
    exit_code = 1


class ParseError(ConcordError, ValueError):
    exit_code = 2

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownNameError(ConcordError, KeyError):
    exit_code = 3

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


class CatalogIOError(ConcordError, OSError):
    exit_code = 4


class CapabilityError(ConcordError):
    """Input exceeds a documented desk-scale bound."""

    exit_code = 5


class DomainError(ConcordError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class InvalidSeifertMatrix(ConcordError, ValueError):
    pass
