"""Exception hierarchy.

Every error raised by the library for a violated mathematical precondition
derives from :class:`DomainError`; the CLI maps those to exit status 3.
"""


class DomainError(Exception):
    """Base class for mathematical domain errors."""


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class SingularMatrix(DomainError):
    pass


class DimensionMismatch(DomainError, ValueError):
    pass


class NotAVertex(DomainError):
    pass


class CapExceeded(DomainError):
    pass


class ConstantDirection(DomainError):
    pass


class IndexOutOfRange(DomainError, IndexError):
    pass


class ParseError(ValueError):
    """Malformed input document (CLI exit status 2)."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
