"""Engine configuration."""

from functools import lru_cache

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables
load_dotenv()


class Settings(BaseSettings):
    """Engine limits and logging, overridable through KANREW_* variables."""

    # Tabulation
    ENUM_LIMIT: int = Field(default=1000, gt=0)

    # Completion
    MAX_RULES: int = Field(default=10_000, gt=0)
    MAX_PASSES: int = Field(default=100, gt=0)

    # Reduction safety net
    STEP_LIMIT: int = Field(default=1_000_000, gt=0)

    # Logging
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(
        env_prefix="KANREW_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        case_sensitive=True,
    )

    def resolve(self, name: str, override: int | None) -> int:
        """Return ``override`` when given, otherwise the configured limit."""
        if override is not None:
            return override
        value: int = getattr(self, name)
        return value


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
