"""Exception hierarchy shared by all cutforge modules."""

from __future__ import annotations


class CutforgeError(Exception):
    """Base class for every error raised by cutforge."""


# -- group layer --------------------------------------------------------------

class ArityMismatch(CutforgeError):
    """Coordinate vector length does not match the signature."""


class NonIntegerInIntFactor(CutforgeError):
    """A coordinate at a Z position is not an integer."""


class SignatureMismatch(CutforgeError):
    """Operands live over different group signatures."""


class LevelOutOfRange(CutforgeError):
    """A convex-subgroup / segment level is outside its allowed range."""


class BadMultiplicity(CutforgeError):
    """A repetition count below 1 was supplied."""


# -- ideal layer ---------------------------------------------------------------

class FieldMismatch(CutforgeError):
    """Operands belong to different valued fields."""


class NotAnOverringIdeal(CutforgeError):
    """The ideal is not stable under the requested overring."""


class NotASubideal(CutforgeError):
    """Annihilator arguments must satisfy I2 subseteq I1."""


class NotAProperSubideal(CutforgeError):
    """The operation requires a strict inclusion I2 subsetneq I1."""


class PreconditionViolated(CutforgeError):
    """An operation-specific precondition failed."""


class DegenerateQuotient(CutforgeError):
    """The requested quotient module is zero, so its annihilator is not an ideal."""


# -- oracle --------------------------------------------------------------------

class PointOutsideMargin(CutforgeError):
    """A test point lies outside the window's margin box."""


# -- language ------------------------------------------------------------------

class CutSyntaxError(CutforgeError):
    """Located parse error for the .cut surface language."""

    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found
        detail = f", found {found}" if found else ""
        super().__init__(f"{line}:{col}: expected {expected}{detail}")


class EvalError(CutforgeError):
    """Evaluation failure, wrapping an engine error with a source location."""

    def __init__(self, line: int, col: int, cause: Exception):
        self.line = line
        self.col = col
        self.cause = cause
        super().__init__(f"{line}:{col}: {cause}")
