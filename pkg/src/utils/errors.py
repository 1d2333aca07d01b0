"""
Eccezioni del dominio weylforms.

Tutte derivano da WeylFormsError; quelle che segnalano un argomento non
valido sono anche ValueError, così il codice chiamante può continuare a
catturare ValueError come prima.
"""
from typing import Optional


class WeylFormsError(Exception):
    """Base class for every error raised by the library."""


class ArityMismatchError(WeylFormsError, ValueError):
    """Operands live in algebras (or polynomial rings) of different arity."""

    def __init__(self, left: int, right: int, what: str = "operands"):
        super().__init__(f"Arity mismatch between {what}: {left} != {right}")
        self.left = left
        self.right = right


class NotSquareError(WeylFormsError, ValueError):
    """A square matrix was required."""

    def __init__(self, rows: int, cols: int):
        super().__init__(f"Matrix is not square: {rows}x{cols}")
        self.rows = rows
        self.cols = cols


class AsymmetricMatrixError(WeylFormsError, ValueError):
    """Sylvester's criterion only applies to symmetric matrices."""


class DuplicateBasisError(WeylFormsError, ValueError):
    """A Gram basis listed the same monomial twice."""


class ExactDivisionError(WeylFormsError, ArithmeticError):
    """An exact division left a non-zero remainder."""


class ExpressionError(WeylFormsError, ValueError):
    """Base class for expression parsing failures; carries the 0-based column."""

    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ExpressionSyntaxError(ExpressionError):
    pass


class NormalOrderError(ExpressionError):
    pass


class NegativeExponentError(ExpressionError):
    pass


class InconsistentArityError(ExpressionError):
    pass


class EncodingError(WeylFormsError, ValueError):
    """A JSON payload does not describe a valid value."""
