"""Runtime configuration using dotenv."""

import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

# Load environment variables from .env
load_dotenv()

_LOG_LEVELS = {"CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"}
_ENVIRONMENTS = {"development", "test", "production"}


def _env_bool(value: str | None, default: bool) -> bool:
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "yes", "on"}


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"Invalid integer setting {name}={raw!r}") from exc


@dataclass
class Settings:
    """Simulator settings loaded from environment variables."""

    # Sweep execution
    threads: int = 1
    output_dir: str = "results"

    # Application
    log_level: str = "INFO"
    environment: str = "development"
    debug: bool = False

    def __init__(self):
        self.threads = _env_int("POLOM_THREADS", 1)
        self.output_dir = os.getenv("POLOM_OUTPUT_DIR", "results")

        self.debug = _env_bool(os.getenv("POLOM_DEBUG"), False)
        self.log_level = "DEBUG" if self.debug else os.getenv("POLOM_LOG_LEVEL", "INFO").upper()
        self.environment = os.getenv("POLOM_ENV", "development")

        if self.threads < 1:
            raise ValueError(f"POLOM_THREADS must be >= 1, got {self.threads}")
        if self.log_level not in _LOG_LEVELS:
            raise ValueError(f"Unknown log level in POLOM_LOG_LEVEL: {self.log_level}")
        if self.environment not in _ENVIRONMENTS:
            raise ValueError(f"Unknown environment in POLOM_ENV: {self.environment}")

    @property
    def log_level_value(self) -> int:
        """Numeric level for logging.basicConfig."""
        return getattr(logging, self.log_level)


_cached_settings: Settings | None = None


def get_settings() -> Settings:
    """Get cached settings instance."""
    global _cached_settings
    if _cached_settings is None:
        _cached_settings = Settings()
    return _cached_settings


def reset_settings() -> None:
    """Clear cached settings. Useful for testing or CLI overrides."""
    global _cached_settings
    _cached_settings = None


if __name__ == "__main__":
    settings = get_settings()
    print("Loaded settings:")
    print(f"  POLOM_THREADS: {settings.threads}")
    print(f"  POLOM_OUTPUT_DIR: {settings.output_dir}")
    print(f"  POLOM_LOG_LEVEL: {settings.log_level}")
    print(f"  POLOM_ENV: {settings.environment}")
