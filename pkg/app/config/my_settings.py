from pydantic_settings import BaseSettings
from dotenv import load_dotenv
import os
load_dotenv()

class Settings(BaseSettings):
    # Server settings
    PORT: int = int(os.getenv("PORT", 8000))
    MAX_HTTP_SAMPLE: int = int(os.getenv("MAX_HTTP_SAMPLE", 10_000_000))

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_DIR: str = os.getenv("LOG_DIR", "logs")

    # Error reporting (disabled when unset)
    SENTRY_DSN: str | None = os.getenv("SENTRY_DSN")

    # Randomness
    DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", 42))
    RNG_BLOCK_SIZE: int = int(os.getenv("RNG_BLOCK_SIZE", 1024))

    # Numerical tolerances
    CLAMP_TOLERANCE: float = float(os.getenv("CLAMP_TOLERANCE", 1e-9))
    BINOMIAL_INVERSION_CUTOFF: float = float(os.getenv("BINOMIAL_INVERSION_CUTOFF", 30.0))

    # Hybrid sampler defaults
    HYBRID_THETA: float = float(os.getenv("HYBRID_THETA", 1.0))
    BETA_RUN_LIMIT: int = int(os.getenv("BETA_RUN_LIMIT", 16))

    # Statistical verification
    VERIFY_REPLICATES: int = int(os.getenv("VERIFY_REPLICATES", 100_000))
    VERIFY_ALPHA: float = float(os.getenv("VERIFY_ALPHA", 0.001))
    VERIFY_SEEDS: str = os.getenv("VERIFY_SEEDS", "1,2,3,4,5")
    POOLING_THRESHOLD: float = float(os.getenv("POOLING_THRESHOLD", 5.0))
    MAX_EXACT_OUTCOMES: int = int(os.getenv("MAX_EXACT_OUTCOMES", 20_000))

    class Config:
        env_file = ".env"

    @property
    def verify_seed_list(self) -> list[int]:
        return [int(seed) for seed in self.VERIFY_SEEDS.split(",") if seed.strip()]

settings = Settings()
