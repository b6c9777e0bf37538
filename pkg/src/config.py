"""
QuarticPell Configuration Loader

Loads and validates configuration from YAML files.
Provides search limits, interval precision, scan and logging settings.
"""

import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import BaseModel, Field, model_validator


# =============================================================================
# CONFIGURATION MODELS
# =============================================================================

class LimitsSettings(BaseModel):
    """Search limits for single queries."""
    k_max: int = Field(default=40, ge=0)
    x_max: int = Field(default=1_000_000, ge=1)
    witness_n_max: int = Field(default=10, ge=0)


class IntervalSettings(BaseModel):
    """
    Precision ladder for interval comparisons.

    Every undecided comparison doubles the working precision, starting at
    start_bits, until max_bits is reached.
    """
    start_bits: int = Field(default=128, ge=32)
    max_bits: int = Field(default=4096, ge=32)

    @model_validator(mode="after")
    def _check_ladder(self) -> "IntervalSettings":
        if self.max_bits < self.start_bits:
            raise ValueError("intervals.max_bits must be >= intervals.start_bits")
        return self


class ScanSettings(BaseModel):
    """Worker pool settings for range scans."""
    jobs: int = Field(default=0, ge=0)  # 0 = one worker per core
    chunk_size: int = Field(default=5000, ge=1)


class LoggingSettings(BaseModel):
    """Diagnostic logging (always stderr, optionally a rotating file)."""
    level: str = "WARNING"
    json_output: bool = False
    file_enabled: bool = False
    log_dir: str = "logs"


class Settings(BaseModel):
    """General QuarticPell settings."""
    limits: LimitsSettings = Field(default_factory=LimitsSettings)
    intervals: IntervalSettings = Field(default_factory=IntervalSettings)
    scan: ScanSettings = Field(default_factory=ScanSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)


# =============================================================================
# CONFIGURATION LOADER
# =============================================================================

CONFIG_DIR_ENV = "QUARTICPELL_CONFIG_DIR"


class ConfigLoader:
    """
    Reads config/settings.yml into a validated Settings model.

    Usage:
        config = ConfigLoader()
        config.load()

        bits = config.settings.intervals.start_bits
        refine(check, **config.precision())
    """

    SETTINGS_FILE = "settings.yml"

    def __init__(self, config_dir: Optional[Path] = None):
        """
        Args:
            config_dir: Directory holding settings.yml. Defaults to
                $QUARTICPELL_CONFIG_DIR, then config/ at the repo root.
        """
        self.config_dir = self._resolve_dir(config_dir)
        self._settings: Optional[Settings] = None

    @staticmethod
    def _resolve_dir(config_dir: Optional[Path]) -> Path:
        if config_dir is not None:
            return Path(config_dir)
        env_dir = os.environ.get(CONFIG_DIR_ENV)
        if env_dir:
            return Path(env_dir)
        return Path(__file__).resolve().parent.parent / "config"

    @property
    def path(self) -> Path:
        return self.config_dir / self.SETTINGS_FILE

    def load(self) -> None:
        """Parse settings.yml; absent sections keep their defaults."""
        if not self.path.exists():
            raise FileNotFoundError(f"Config file not found: {self.path}")
        data: Dict[str, Any] = yaml.safe_load(self.path.read_text(encoding="utf-8")) or {}
        data.pop("version", None)
        self._settings = Settings.model_validate(data)

    @property
    def settings(self) -> Settings:
        if self._settings is None:
            self.load()
        assert self._settings is not None
        return self._settings

    def precision(self) -> Dict[str, int]:
        """Keyword arguments for refine()'s precision ladder."""
        intervals = self.settings.intervals
        return {"start_bits": intervals.start_bits, "max_bits": intervals.max_bits}


# =============================================================================
# SINGLETON INSTANCE
# =============================================================================

_config: Optional[ConfigLoader] = None


def get_config() -> ConfigLoader:
    """Process-wide configuration, loaded on first use."""
    global _config
    if _config is None:
        _config = ConfigLoader()
        _config.load()
    return _config


def reload_config(config_dir: Optional[Path] = None) -> ConfigLoader:
    """Replace the process-wide configuration."""
    global _config
    _config = ConfigLoader(config_dir)
    _config.load()
    return _config
