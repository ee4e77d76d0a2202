"""
Exception hierarchy for the Poisson-Nijenhuis toolkit.

Every error is a ``ValueError`` so callers that only care about bad input can
catch the builtin; the subclasses carry the structured detail (positions,
witnesses, line numbers) that the command-line report prints.
"""

from typing import Optional


class VerificationError(ValueError):
    """Base class for all toolkit errors."""


# --- expressions -----------------------------------------------------------

class ExpressionError(VerificationError):
    """Raised when an expression cannot be turned into a polynomial."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.reason = message
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ExpressionSyntaxError(ExpressionError):
    """Malformed expression text."""


class UnknownIdentifierError(ExpressionError):
    """An identifier that is not a coordinate of the chart."""

    def __init__(self, identifier: str, position: Optional[int] = None):
        self.identifier = identifier
        super().__init__(f"Unknown identifier '{identifier}'", position)


class ExponentError(ExpressionError):
    """Exponent that is not a nonnegative integer literal."""


# --- charts and tensors ----------------------------------------------------

class ChartMismatchError(VerificationError):
    """Operands live on different charts."""


class InvalidChartError(VerificationError):
    """Coordinate names that are not distinct identifiers."""


class IndexRangeError(VerificationError):
    """Coordinate index outside the chart."""


class DimensionError(VerificationError):
    """Point or component vector of the wrong length."""


class NotABivectorError(VerificationError):
    """N∘P♯ is not antisymmetric, so NP is not a bivector."""

    def __init__(self, witness, indices):
        self.witness = witness
        self.indices = indices
        i, j = indices
        super().__init__(
            f"N∘P♯ is not antisymmetric: symmetric part at ({i + 1}, {j + 1}) "
            f"is {witness}"
        )


# --- groupoids -------------------------------------------------------------

class CompositionError(VerificationError):
    """Groupoid elements that are not composable."""


class NotSVerticalError(VerificationError):
    """A bivector with off-block components cannot restrict to the algebroid."""

    def __init__(self, component: str, value):
        self.component = component
        self.value = value
        super().__init__(
            f"Bivector is not s-vertical at the units: component {component} = {value}"
        )


# --- spec files ------------------------------------------------------------

class SpecFileError(VerificationError):
    """Problem in a spec file, located by line and column (both 1-based)."""

    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class SpecSyntaxError(SpecFileError):
    """Line that does not match the spec-file grammar."""


class DuplicateNameError(SpecFileError):
    """Name declared twice for the same kind."""


class UnknownReferenceError(SpecFileError):
    """Reference to an undeclared space or tensor."""


class SpecIndexError(SpecFileError):
    """Component index outside the declared dimension or not writable."""
