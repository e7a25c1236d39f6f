"""Exception types shared across the package."""


class DglError(Exception):
    """Base class for all package errors."""


class TruncationError(DglError):
    """A computation would need data beyond the configured truncation degree."""


class ValidationError(DglError):
    """A model or morphism violates a structural invariant."""


class PreconditionError(DglError):
    """An operation was called on inputs outside its contract."""


class InternalError(DglError):
    """An internal consistency check failed; indicates a bug."""


class ParseError(DglError):
    """Model-file syntax or static-semantics error, with source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
