"""Job configuration schemas for the command-line front end."""

from enum import StrEnum
from pathlib import Path

from pydantic import BaseModel, Field, field_validator, model_validator

from src.drinfeld_modpoly.algebra.field import prime_power


class Command(StrEnum):
    """Subcommands of the CLI."""

    COUNT = "count"
    ENUMERATE = "enumerate"
    SNF = "snf"
    BRIDGE = "bridge"
    EXPAND = "expand"
    MODPOLY = "modpoly"
    VERIFY = "verify"


class OutputFormat(StrEnum):
    """How results are written to stdout."""

    TEXT = "text"
    JSON = "json"


class ExpandTarget(StrEnum):
    """Quantities the ``expand`` command can expand."""

    G = "g"
    DELTA = "delta"
    U = "u"
    J = "j"
    EISENSTEIN = "eisenstein"
    Q_SCALED = "q-scaled"
    SUBLATTICE = "sublattice"


EXPANSION_COMMANDS = frozenset({Command.EXPAND, Command.MODPOLY})


class JobConfig(BaseModel):
    """One CLI invocation, validated.

    Polynomials and matrices stay strings here; they are parsed against F_q
    when the job runs so that grammar errors surface with exit code 2.
    """

    command: Command = Field(..., description="Subcommand to run")
    q: int = Field(default=2, description="Size of the constant field, a prime power")
    r: int = Field(default=2, ge=1, le=8, description="Rank")
    n: str = Field(default="T", description="Monic level polynomial in the canonical grammar")
    precision: int | None = Field(
        default=None, ge=1, description="Working precision; derived from n when omitted"
    )
    output: OutputFormat = Field(default=OutputFormat.TEXT, description="Output format")
    seed: int = Field(default=0, description="Seed for randomized property suites")
    matrix: str | None = Field(default=None, description='Matrix for snf, rows ";", entries ","')
    what: ExpandTarget = Field(default=ExpandTarget.J, description="Quantity for expand")
    k: int = Field(default=1, ge=1, description="Index k for g_k, u_k and E_{q^k-1}")
    a: str = Field(default="T", description="Polynomial a for q(a z)")
    shape: int | None = Field(
        default=None, ge=0, description="Index into the sublattice shapes of n for expand"
    )
    k_max: int = Field(default=3, ge=1, le=8, description="Largest bridge index")
    cache_dir: Path | None = Field(default=None, description="Directory for the bridge cache")
    primitive: bool = Field(
        default=False, description="Use the cyclotomic factor as torsion modulus"
    )

    @field_validator("q")
    @classmethod
    def validate_q(cls, v: int) -> int:
        prime_power(v)
        return v

    @field_validator("n", "a")
    @classmethod
    def validate_polynomial_text(cls, v: str) -> str:
        v = v.strip()
        if not v:
            raise ValueError("polynomial must not be empty")
        return v

    @model_validator(mode="after")
    def validate_rank_for_command(self) -> "JobConfig":
        if self.command in EXPANSION_COMMANDS and self.r < 2:
            raise ValueError("expansion commands need rank r >= 2")
        if self.command == Command.SNF and not self.matrix:
            raise ValueError("snf needs --matrix")
        return self
