"""
Configuration Management
Centralized settings for the library and the command line
"""

from pathlib import Path
from typing import Optional, Union

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="PACING_",
        case_sensitive=True,
        extra="ignore",
    )

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FILE_PATH: Optional[str] = None

    # Circuit enumeration
    BRUTE_FORCE_MAX_NODES: int = 12

    # Equilibrium search
    SEARCH_PROFILE_LIMIT: int = 100_000
    SEARCH_WORKERS: int = 1

    # Reduction defaults (exact rationals as "p/q" strings)
    DEFAULT_GAMMA: str = "0"
    SNAP_TOLERANCE: str = "1/1000"


# Initialize settings
settings = Settings()


def create_directories(*paths: Union[str, Path]):
    """Create parent directories for the given output files"""
    for path in paths:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
