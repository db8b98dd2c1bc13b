"""Type definitions for drinfeld-modpoly.

This module re-exports all types from submodules for convenient imports.
"""

from src.drinfeld_modpoly.types.job import Command, ExpandTarget, JobConfig, OutputFormat
from src.drinfeld_modpoly.types.payloads import (
    BridgePayload,
    CountPayload,
    ErrorPayload,
    ExpansionPayload,
    MatrixPayload,
    ModpolyPayload,
    Payload,
    SeriesPayload,
    SnfPayload,
    VerifyPayload,
)
from src.drinfeld_modpoly.types.reports import (
    BoundReport,
    BoundRow,
    CheckResult,
    CheckStatus,
    NonCancellationReport,
    VerificationReport,
)

__all__ = [
    # Job
    "Command",
    "ExpandTarget",
    "JobConfig",
    "OutputFormat",
    # Payloads
    "Payload",
    "SeriesPayload",
    "ExpansionPayload",
    "MatrixPayload",
    "CountPayload",
    "SnfPayload",
    "BridgePayload",
    "ModpolyPayload",
    "VerifyPayload",
    "ErrorPayload",
    # Reports
    "CheckStatus",
    "CheckResult",
    "BoundRow",
    "BoundReport",
    "VerificationReport",
    "NonCancellationReport",
]
