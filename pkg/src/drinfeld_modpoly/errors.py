"""Error taxonomy shared by the library and the command-line front end.

Every error raised on purpose by the package derives from ``ModpolyError`` and
carries a stable ``kind`` name plus the process exit code the CLI uses for it:

* parse errors (bad grammar, bad configuration) exit with 2,
* domain errors (zero divisors, singular matrices, bad shapes) exit with 3,
* verification failures (precision shortfall, non-descent, bound violations) exit with 4.
"""

from __future__ import annotations

from enum import StrEnum
from typing import Any


class ErrorKind(StrEnum):
    """Stable machine-readable error names."""

    GRAMMAR = "grammar_error"
    CONFIG = "config_error"
    FIELD = "field_error"
    ZERO_POLYNOMIAL = "zero_polynomial_error"
    ZERO_DIVISOR = "zero_divisor_error"
    RING_MISMATCH = "ring_mismatch_error"
    SHAPE = "shape_error"
    SINGULAR_MATRIX = "singular_matrix_error"
    COMPOSITION = "composition_error"
    PRECISION = "precision_error"
    NON_INTEGRAL_REDUCTION = "non_integral_reduction_error"
    DESCENT = "descent_error"
    BOUND_VIOLATION = "bound_violation_error"


class ModpolyError(Exception):
    """Base class of all package errors."""

    kind: ErrorKind = ErrorKind.CONFIG
    exit_code: int = 1

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        """Structured error object used by the CLI."""
        return {
            "error": str(self.kind),
            "message": self.message,
            "details": {key: str(value) for key, value in sorted(self.details.items())},
        }


# =============================================================================
# Parse errors (exit 2)
# =============================================================================


class ParseError(ModpolyError):
    exit_code = 2


class GrammarError(ParseError, ValueError):
    """Text that does not follow the canonical polynomial grammar."""

    kind = ErrorKind.GRAMMAR


class ConfigError(ParseError, ValueError):
    """Invalid job configuration (bad q, rank, command combination)."""

    kind = ErrorKind.CONFIG


# =============================================================================
# Domain errors (exit 3)
# =============================================================================


class DomainError(ModpolyError):
    exit_code = 3


class FieldError(DomainError, ValueError):
    """Non-prime characteristic or reducible field modulus."""

    kind = ErrorKind.FIELD


class ZeroPolynomialError(DomainError, ZeroDivisionError):
    """An operation that needs a nonzero polynomial received zero."""

    kind = ErrorKind.ZERO_POLYNOMIAL


class ZeroDivisorError(DomainError, ZeroDivisionError):
    """Inversion of a non-unit (zero divisor or non-invertible leading coefficient)."""

    kind = ErrorKind.ZERO_DIVISOR


class RingMismatchError(DomainError, TypeError):
    """Operands live in different rings or on different exponent grids."""

    kind = ErrorKind.RING_MISMATCH


class ShapeError(DomainError, ValueError):
    """Inconsistent sublattice shape or out-of-range index."""

    kind = ErrorKind.SHAPE


class SingularMatrixError(DomainError, ValueError):
    kind = ErrorKind.SINGULAR_MATRIX


class CompositionError(DomainError, ValueError):
    """Series substitution with a non-positive order or unsupported grid."""

    kind = ErrorKind.COMPOSITION


# =============================================================================
# Verification errors (exit 4)
# =============================================================================


class VerificationError(ModpolyError):
    exit_code = 4


class PrecisionError(VerificationError):
    """Working precision too low: a tail that must vanish does not."""

    kind = ErrorKind.PRECISION


class NonIntegralReductionError(VerificationError):
    """Greedy reduction met an order that is not a multiple of the j-order."""

    kind = ErrorKind.NON_INTEGRAL_REDUCTION


class DescentError(VerificationError):
    """A symmetric function kept a nonzero torsion coordinate."""

    kind = ErrorKind.DESCENT


class BoundViolationError(VerificationError):
    """A computed coefficient exceeds the derived weighted-degree bound."""

    kind = ErrorKind.BOUND_VIOLATION
