"""Exception hierarchy.

Every error carries a machine-readable ``code`` and a ``category`` that the
command-line front end maps onto its exit status.
"""

from __future__ import annotations

PARSE = "parse"
MATH_DOMAIN = "math-domain"
CHECK_FAILED = "check-failed"


class SchemeForgeError(Exception):
    code = "error"
    category = MATH_DOMAIN


class ParseError(SchemeForgeError, ValueError):
    code = "parse-error"
    category = PARSE


# exactnum
class MixedDiscriminants(SchemeForgeError, ValueError):
    code = "mixed-discriminants"


class DivisionByZero(SchemeForgeError, ZeroDivisionError):
    code = "division-by-zero"


# linalg
class SingularMatrix(SchemeForgeError, ValueError):
    code = "singular-matrix"


class IrreducibleCubicOrHigher(SchemeForgeError, ValueError):
    code = "irreducible-cubic-or-higher"


class NotAnEigenvalue(SchemeForgeError, ValueError):
    code = "not-an-eigenvalue"


class EigenspaceDimensionNotOne(SchemeForgeError, ValueError):
    code = "eigenspace-dimension-not-one"


# scheme
class AxiomViolation(SchemeForgeError, ValueError):
    code = "axiom-violation"

    def __init__(self, kind: str, witness=None, message: str | None = None):
        self.kind = kind
        self.witness = witness
        super().__init__(message or f"{kind} at {witness}")


class DegenerateSplitting(SchemeForgeError, ValueError):
    code = "degenerate-splitting"


class FormulaMismatch(SchemeForgeError, AssertionError):
    code = "formula-mismatch"
    category = CHECK_FAILED


class PreconditionViolated(SchemeForgeError, ValueError):
    code = "precondition-violated"


# geometry
class EnumerationTooLarge(SchemeForgeError, ValueError):
    code = "enumeration-too-large"


class SingularBasePoint(SchemeForgeError, ValueError):
    code = "singular-base-point"


class NoSecondPoint(SchemeForgeError, ValueError):
    code = "no-second-point"


class DegenerateParameters(SchemeForgeError, ValueError):
    code = "degenerate-parameters"


class UnsupportedDimension(SchemeForgeError, ValueError):
    code = "unsupported-dimension"


# catalog
class TooLarge(SchemeForgeError, ValueError):
    code = "too-large"


class InadmissibleParameters(SchemeForgeError, ValueError):
    code = "inadmissible-parameters"


class InfeasibleParameters(SchemeForgeError, ValueError):
    code = "infeasible-parameters"


class OutOfRange(SchemeForgeError, ValueError):
    code = "out-of-range"


# designs
class EmptySubset(SchemeForgeError, ValueError):
    code = "empty-subset"


class NegativeTransformEntry(SchemeForgeError, ValueError):
    code = "negative-transform-entry"


class SearchFailed(SchemeForgeError, RuntimeError):
    code = "search-failed"
    category = CHECK_FAILED
