"""
Semitree Configuration
Centralized configuration management
"""
from pydantic_settings import BaseSettings, SettingsConfigDict
from pathlib import Path


class Settings(BaseSettings):
    """Application settings"""

    model_config = SettingsConfigDict(
        env_prefix="SEMITREE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",  # Allow extra env vars
    )

    # Walker
    workers: int = 1
    partition_genus: int = 8  # frontier genus handed to worker processes

    # Defaults for subcommands
    default_max_genus: int = 10
    tree_a_levels: int = 30

    # Paths - Adjusted for app/core/ location
    # Root is app/../
    root_dir: Path = Path(__file__).parent.parent.parent
    output_dir: Path = root_dir / "output"
    logs_dir: Path = root_dir / "logs"
    suites_file: Path = root_dir / "config" / "suites.yaml"

    # Logging
    log_level: str = "WARNING"
    log_to_file: bool = False
    log_max_files: int = 10  # session logs kept in logs_dir


settings = Settings()
