"""Verification report Pydantic schemas."""

from enum import StrEnum

from pydantic import BaseModel, Field


class CheckStatus(StrEnum):
    """Outcome of one verification check."""

    PASSED = "passed"
    FAILED = "failed"
    REPORTED = "reported"


class BoundRow(BaseModel):
    """The bounds on the weighted degree of one coefficient a_i."""

    i: int = Field(..., ge=0, description="Index of the coefficient of X^i")
    weight: str | None = Field(
        ..., description="Weighted degree of a_i as a fraction string, None for a_i = 0"
    )
    sharp_bound: str = Field(..., description="|n|^(r-1) (#J - i) w(I)")
    theorem_bound: str = Field(
        ..., description="(|n|^(2(r-1)) prod |p|^r/(|p|^r - |p|^(r-1)) - i) w(I)"
    )
    proof_bound: str = Field(
        ..., description="|n|^(2(r-1)) (prod |p|^r/(|p|^r - |p|^(r-1)) - i) w(I)"
    )
    sharp_ok: bool = Field(..., description="Whether the sharp bound holds")
    theorem_ok: bool = Field(..., description="Whether theorem_bound holds")
    proof_ok: bool = Field(..., description="Whether proof_bound holds")


class BoundReport(BaseModel):
    """Weighted-degree bounds for every coefficient of a modular polynomial."""

    q: int = Field(..., description="Size of the constant field")
    n: str = Field(..., description="Level in the canonical grammar")
    r: int = Field(default=2, description="Rank")
    invariant_weight: str = Field(..., description="w(I) as a fraction string")
    degree: int = Field(..., description="#J(n), the degree in X")
    rows: list[BoundRow] = Field(default_factory=list, description="One row per coefficient")
    all_sharp_ok: bool = Field(..., description="Sharp bound holds for every coefficient")
    discrepancies: list[str] = Field(
        default_factory=list,
        description="Coefficients where the displayed bounds disagree with the sharp bound",
    )


class CheckResult(BaseModel):
    """One named property check."""

    name: str = Field(..., description="Check identifier")
    status: CheckStatus = Field(..., description="Outcome")
    detail: str = Field(default="", description="Human-readable detail")


class VerificationReport(BaseModel):
    """The outcome of a property suite run."""

    q: int = Field(..., description="Size of the constant field")
    seed: int = Field(..., description="Seed used for randomized checks")
    checks: list[CheckResult] = Field(default_factory=list, description="Individual checks")

    @property
    def passed(self) -> bool:
        return all(c.status != CheckStatus.FAILED for c in self.checks)


class NonCancellationReport(BaseModel):
    """Orders of f(v_1, ..., v_{r-1}) against -c * w(f) on random weighted polynomials."""

    q: int = Field(..., description="Size of the constant field")
    r: int = Field(..., ge=2, description="Rank")
    scale: int = Field(..., ge=1, description="Common order scale c")
    seed: int = Field(..., description="Seed of the random polynomials")
    samples: int = Field(..., ge=0, description="Number of polynomials tested")
    passed: int = Field(..., ge=0, description="Number of polynomials with the predicted order")
    failures: list[str] = Field(
        default_factory=list, description="Polynomials whose order or leading form differed"
    )

    @property
    def ok(self) -> bool:
        return self.passed == self.samples and not self.failures
