"""Exception hierarchy shared by every module."""

from __future__ import annotations


class FrobError(Exception):
    """Base class for all errors raised by frobgpd."""


class CompositionError(FrobError):
    """Two relations (or morphisms) do not meet in a common set."""

    def __init__(self, left, right, message: str | None = None):
        self.left = left
        self.right = right
        super().__init__(message or f"cannot compose: codomain {left!r} does not match domain {right!r}")


class PreconditionError(FrobError):
    """An operation was called on input that violates its hypotheses.

    ``witness`` carries a concrete counterexample when one is available.
    """

    def __init__(self, message: str, witness=None):
        self.witness = witness
        if witness is not None:
            message = f"{message} (witness: {witness!r})"
        super().__init__(message)


class InvariantViolation(FrobError):
    """An internal consistency check failed.

    These guard facts that hold for valid input by theorem; hitting one
    means the implementation (or the input validation) is wrong.
    """

    def __init__(self, what: str, witness=None):
        self.what = what
        self.witness = witness
        message = what if witness is None else f"{what} (witness: {witness!r})"
        super().__init__(message)


class ConversionError(PreconditionError):
    """A structure conversion was refused because a hypothesis failed."""


class ParseError(FrobError):
    def __init__(self, message: str, line: int, column: int = 1, expected: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.expected = expected
        text = f"line {line}, column {column}: {message}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


class ClosureError(FrobError):
    """A composite fell outside the morphism class both factors belong to."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        if witness is not None:
            message = f"{message} (witness: {witness!r})"
        super().__init__(message)
