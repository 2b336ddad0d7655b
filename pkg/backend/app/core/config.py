from typing import Literal

from pydantic import field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from typing_extensions import Self


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        # Use top level .env file (one level above ./backend/)
        env_file="../.env",
        env_prefix="ORIGINLAB_",
        env_ignore_empty=True,
        extra="ignore",
    )
    PROJECT_NAME: str = "originlab"
    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"

    # worker processes for Monte Carlo trials; --threads overrides
    THREADS: int = 1
    # trials handed to a worker per task
    CHUNK_SIZE: int = 2000

    DEFAULT_CONFIDENCE: float = 0.99
    DEFAULT_PRECISION_BITS: int = 53
    # |atoms|^(n*d) states, desk-scale minutes
    ENUMERATION_GUARD: int = 10**7
    COST_RESAMPLE_ATTEMPTS: int = 1000

    @field_validator("THREADS", "CHUNK_SIZE", "COST_RESAMPLE_ATTEMPTS")
    @classmethod
    def _positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"must be at least 1, got {v}")
        return v

    @field_validator("DEFAULT_PRECISION_BITS", "ENUMERATION_GUARD")
    @classmethod
    def _positive_bits(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"must be positive, got {v}")
        return v

    @model_validator(mode="after")
    def _check_confidence(self) -> Self:
        if not 0.0 < self.DEFAULT_CONFIDENCE < 1.0:
            raise ValueError(
                f"DEFAULT_CONFIDENCE must lie in (0, 1), got {self.DEFAULT_CONFIDENCE}"
            )
        return self


settings = Settings()
