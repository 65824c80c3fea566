"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the command line
front end prints alongside the message.
"""

from __future__ import annotations


class HomLieError(Exception):
    code = "error"

    def __init__(self, message: str = "", witness=None):
        super().__init__(message or self.code)
        self.witness = witness


class SingularMatrix(HomLieError):
    code = "singular-matrix"


class FieldExtensionNeeded(HomLieError):
    """A required eigenvalue is not rational."""

    code = "field-extension-needed"


class NotAHomomorphism(HomLieError):
    code = "not-a-homomorphism"


class DegenerateTwist(HomLieError):
    code = "degenerate-twist"


class NotAnIdeal(HomLieError):
    code = "not-an-ideal"


class NotNilpotent(HomLieError):
    code = "not-nilpotent"


class PreconditionFailed(HomLieError):
    code = "precondition-failed"


class NotARepresentation(HomLieError):
    code = "not-a-representation"


class BaseMismatch(HomLieError):
    code = "base-mismatch"


class NotMultiplicative(HomLieError):
    code = "not-multiplicative"


class PolynomialNotSatisfied(HomLieError):
    code = "polynomial-not-satisfied"


class NilindexExceeded(HomLieError):
    code = "nilindex-exceeded"


class NotADerivation(HomLieError):
    code = "not-a-derivation"


class InvalidGrading(HomLieError):
    code = "invalid-grading"


class SearchExhausted(HomLieError):
    code = "search-exhausted"

    def __init__(self, message: str = "", bound: int = 0, witness=None):
        super().__init__(message, witness)
        self.bound = bound


class NotInvariant(HomLieError):
    code = "not-invariant"


class AnticommutativityError(HomLieError):
    code = "not-anticommutative"


class ParseError(HomLieError):
    code = "parse-error"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


class AntisymmetryConflict(ParseError):
    code = "antisymmetry-conflict"


class DimensionMismatch(ParseError):
    code = "dimension-mismatch"
