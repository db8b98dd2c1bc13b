"""JSON payload schemas emitted by the command-line front end.

Every document carries ``"schema": 1``. Exact values are strings in the
canonical grammar so that output is byte-stable across runs.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

from src.drinfeld_modpoly.algebra.series import INF, FracLaurentSeries, format_series
from src.drinfeld_modpoly.types.reports import (
    BoundReport,
    CheckResult,
    NonCancellationReport,
    VerificationReport,
)

SCHEMA_VERSION = 1

# =============================================================================
# Base
# =============================================================================


class Payload(BaseModel):
    """Common base: a versioned, frozen JSON document."""

    model_config = {"frozen": True}

    schema_version: Literal[1] = Field(default=SCHEMA_VERSION, alias="schema")

    def to_dict(self) -> dict[str, Any]:
        """Dictionary with the ``schema`` key, ready for ``json.dumps``."""
        return self.model_dump(by_alias=True, mode="json")


# =============================================================================
# Series
# =============================================================================


class SeriesPayload(Payload):
    """sum c_m t^(m / grid_denom) + O(t^(prec_num / grid_denom))."""

    grid_denom: int = Field(..., ge=1, description="Exponents are numerators over this")
    terms: list[tuple[int, str]] = Field(
        default_factory=list, description="[exponent numerator, coefficient] pairs, ascending"
    )
    prec_num: int | None = Field(..., description="Precision numerator, None for exact series")
    root_exponent: str | None = Field(
        default=None, description="e when the series is (-1)^e times the terms"
    )
    text: str = Field(default="", description="Plain-text rendering")

    @classmethod
    def from_series(
        cls, series: FracLaurentSeries, var: str = "t", root_exponent: Any = None
    ) -> SeriesPayload:
        fmt = series.ring.format
        return cls(
            grid_denom=series.denom,
            terms=[(n, fmt(c)) for n, c in series.items()],
            prec_num=None if series.prec == INF else int(series.prec),
            root_exponent=str(root_exponent) if root_exponent else None,
            text=format_series(series, var),
        )


class ExpansionPayload(Payload):
    """Output of the ``expand`` command."""

    q: int = Field(..., description="Size of the constant field")
    r: int = Field(..., description="Rank")
    what: str = Field(..., description="Quantity expanded")
    variable: str = Field(default="t", description="Expansion variable")
    label: str = Field(..., description="Human-readable name of the quantity")
    series: SeriesPayload = Field(..., description="The expansion")


# =============================================================================
# Lattices
# =============================================================================


class MatrixPayload(Payload):
    """A square matrix over A, row-major, entries in the canonical grammar."""

    rows: list[list[str]] = Field(..., description="Matrix rows")


class CountPayload(Payload):
    """Output of ``count`` and ``enumerate``."""

    q: int = Field(..., description="Size of the constant field")
    r: int = Field(..., description="Rank")
    n: str = Field(..., description="Level")
    count: int = Field(..., ge=0, description="Number of cyclic sublattices of level n")
    displayed_count: str | None = Field(
        default=None, description="Value of the product formula as displayed, as a fraction"
    )
    matrices: list[list[list[str]]] | None = Field(
        default=None, description="Hermite matrices of the sublattices (enumerate only)"
    )


class SnfPayload(Payload):
    """Output of ``snf``."""

    q: int = Field(..., description="Size of the constant field")
    matrix: list[list[str]] = Field(..., description="Input matrix")
    invariant_factors: list[str] = Field(..., description="Monic d_1 | d_2 | ...")


# =============================================================================
# Bridge
# =============================================================================


class BridgePayload(Payload):
    """F_k, G_k and H_k up to k_max."""

    q: int = Field(..., description="Size of the constant field")
    k_max: int = Field(..., ge=1, description="Largest index")
    F: list[str] = Field(..., description="E_k in terms of exponential coefficients")
    G: list[str] = Field(..., description="Exponential coefficients in terms of E_k")
    H: list[str] = Field(..., description="g_k in terms of lower exponential coefficients")
    identity_holds: bool = Field(..., description="H_k == F_k(G_1, ..., G_k) for every k")


# =============================================================================
# Modular polynomial
# =============================================================================


class ModpolyPayload(Payload):
    """Output of the ``modpoly`` command."""

    q: int = Field(..., description="Size of the constant field")
    n: str = Field(..., description="Level")
    r: int = Field(default=2, description="Rank")
    degree: int = Field(..., description="Degree in X, #J(n)")
    precision: int = Field(..., description="Working precision used")
    coefficients: dict[str, str] = Field(..., description="a_i as polynomials in j, keyed by i")
    monic: bool = Field(..., description="Whether a_degree = 1")
    integral: bool = Field(..., description="Whether every a_i lies in A[j]")
    symmetry: CheckResult = Field(..., description="Phi_n(X, Y) = Phi_n(Y, X) report")
    bound_report: BoundReport = Field(..., description="Weighted-degree bounds")
    rendered: str = Field(..., description="Plain-text rendering of Phi_n(X, j)")


# =============================================================================
# Verification and errors
# =============================================================================


class VerifyPayload(Payload):
    """Output of the ``verify`` command."""

    report: VerificationReport = Field(..., description="Check outcomes")
    non_cancellation: NonCancellationReport | None = Field(
        default=None, description="Random weighted polynomial experiment"
    )
    passed: bool = Field(..., description="No check failed")


class ErrorPayload(Payload):
    """Structured error object written on a failing run."""

    error: str = Field(..., description="Error taxonomy name")
    message: str = Field(..., description="Human-readable message")
    details: dict[str, str] = Field(default_factory=dict, description="Context")
    exit_code: int = Field(..., description="Process exit code")
