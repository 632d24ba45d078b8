"""
Configuration management for thermoshift.

Uses pydantic-settings for environment variable parsing and validation.
Every variable is prefixed with ``THERMOSHIFT_`` (``THERMOSHIFT_LOG=DEBUG``).
"""

import os
from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    """Main application settings."""

    model_config = SettingsConfigDict(
        env_prefix="THERMOSHIFT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Logging
    log: str = Field(default="WARNING", description="Log verbosity")

    # Spectral radius of transition matrices
    spectral_tol: float = Field(default=1e-12, gt=0, description="Power iteration tolerance")
    spectral_max_iter: int = Field(default=10_000, gt=0, description="Power iteration cap")

    # Perron-Frobenius-Ruelle solver
    rpf_tol: float = Field(default=1e-12, gt=0, description="Transfer operator residual tolerance")
    rpf_max_iter: int = Field(default=100_000, gt=0, description="Transfer operator iteration cap")

    # Partition functions
    n_max: int = Field(default=20, ge=1, description="Largest Birkhoff length")
    max_words: int = Field(default=10**8, gt=0, description="Word enumeration memory guard")
    bimodule_max_words: int = Field(
        default=4096, gt=0, description="Cap on the words of a D-potential Birkhoff sum"
    )

    # Variational search
    variational_restarts: int = Field(default=4, ge=0)
    variational_iters: int = Field(default=2_000, ge=0)

    # Execution
    threads: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    seed: int = Field(default=0, ge=0)

    @field_validator("log", mode="before")
    @classmethod
    def normalize_log(cls, v: str) -> str:
        level = str(v).strip().upper() if v else "WARNING"
        if level not in LOG_LEVELS:
            raise ValueError(f"Unknown log level: {v}")
        return level


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
