from typing import Optional
from pydantic_settings import BaseSettings, SettingsConfigDict

class Settings(BaseSettings):
    # Randomness
    GAPSHEAR_SEED: Optional[str] = None  # decimal or 0x-prefixed hex, fallback for --seed
    RATE_C: float = 3.0                  # constant hidden in every Θ̃(1/(k+1)) sampling rate
    FAILURE_EXPONENT: float = 1.0        # λ, "with high probability" means 1 - n^(-λ)

    # Aperiodic PTAS
    PTAS_DELTA: float = 0.5              # decomposition failure probability per iteration

    # Corpus generation
    APERIODIC_RETRIES: int = 32

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_JSON: bool = False

    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )

settings = Settings()
