"""Configuration module using pydantic-settings for type-safe env variable loading."""

from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables.

    Variables use the ``MODPOLY_`` prefix (``MODPOLY_LOG_LEVEL=DEBUG``) and are
    also read from a ``.env`` file when present.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="MODPOLY_",
        case_sensitive=False,
        extra="ignore",
    )

    # Application Configuration
    log_level: str = Field(
        default="WARNING",
        description="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
    )

    # Bridge cache
    cache_dir: Path = Field(
        default=Path("./cache/bridge"),
        description="Directory for persisted F_k/G_k/H_k bridge polynomials",
    )
    use_bridge_cache: bool = Field(
        default=False,
        description="Read and write bridge polynomials from cache_dir",
    )

    # Defaults for jobs
    default_q: int = Field(default=2, ge=2, description="Default field size q")
    default_rank: int = Field(default=2, ge=1, le=8, description="Default Drinfeld module rank r")
    precision_guard: int = Field(
        default=2,
        ge=0,
        le=64,
        description="Extra grid terms added on top of every derived default precision",
    )

    # Property suites
    random_seed: int = Field(default=0, description="Seed for randomized property suites")
    property_samples: int = Field(
        default=50,
        ge=1,
        le=10_000,
        description="Number of random weighted polynomials in the non-cancellation check",
    )
    max_enumeration_degree: int = Field(
        default=4,
        ge=0,
        le=12,
        description="Refuse exhaustive sublattice enumeration above this degree of n",
    )
    max_exponent: int = Field(
        default=4096,
        ge=1,
        le=1 << 20,
        description="Largest exponent accepted by the polynomial text parser",
    )


# Global settings instance
settings = Settings()
