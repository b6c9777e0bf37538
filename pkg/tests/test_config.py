"""
Tests for QuarticPell Configuration Loader
"""

import pytest
from pathlib import Path
import sys

# Add src to path for direct imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from pydantic import ValidationError

from src.config import (
    ConfigLoader,
    IntervalSettings,
    LimitsSettings,
    Settings,
    get_config,
    reload_config,
)


class TestConfigLoader:
    """Tests for ConfigLoader class."""

    @pytest.fixture
    def config_dir(self):
        """Get the config directory path."""
        return Path(__file__).parent.parent / "config"

    @pytest.fixture
    def loader(self, config_dir):
        """Create a ConfigLoader instance."""
        return ConfigLoader(config_dir=config_dir)

    def test_load_settings(self, loader):
        """Test that settings.yml loads correctly."""
        loader.load()

        assert isinstance(loader.settings, Settings)

    def test_limits_defaults(self, loader):
        """Test the search limits shipped in settings.yml."""
        limits = loader.settings.limits
        assert limits.k_max == 40
        assert limits.x_max == 1_000_000
        assert limits.witness_n_max == 10

    def test_precision_ladder(self, loader):
        """Test precision() returns refine() keyword arguments."""
        assert loader.precision() == {"start_bits": 128, "max_bits": 4096}

    def test_auto_load_on_property_access(self, config_dir):
        """Test that accessing settings triggers load."""
        loader = ConfigLoader(config_dir=config_dir)

        _ = loader.settings
        assert loader.path.name == "settings.yml"
        assert loader._settings is not None

    def test_missing_file(self, tmp_path):
        """Test FileNotFoundError for an empty config directory."""
        loader = ConfigLoader(config_dir=tmp_path)

        with pytest.raises(FileNotFoundError):
            loader.load()

    def test_partial_file_uses_defaults(self, tmp_path):
        """Test that missing sections fall back to model defaults."""
        (tmp_path / "settings.yml").write_text("limits:\n  k_max: 12\n")
        loader = ConfigLoader(config_dir=tmp_path)

        assert loader.settings.limits.k_max == 12
        assert loader.settings.limits.x_max == 1_000_000
        assert loader.settings.intervals.start_bits == 128

    def test_env_config_dir(self, tmp_path, monkeypatch):
        """Test QUARTICPELL_CONFIG_DIR selects the directory."""
        (tmp_path / "settings.yml").write_text("scan:\n  chunk_size: 7\n")
        monkeypatch.setenv("QUARTICPELL_CONFIG_DIR", str(tmp_path))

        loader = ConfigLoader()
        assert loader.settings.scan.chunk_size == 7


class TestSettingsValidation:
    """Tests for the pydantic setting models."""

    def test_ladder_must_increase(self):
        """Test max_bits below start_bits is rejected."""
        with pytest.raises(ValidationError):
            IntervalSettings(start_bits=256, max_bits=128)

    def test_start_bits_floor(self):
        """Test start_bits below 32 is rejected."""
        with pytest.raises(ValidationError):
            IntervalSettings(start_bits=8, max_bits=64)

    def test_negative_limits_rejected(self):
        """Test x_max must be positive."""
        with pytest.raises(ValidationError):
            LimitsSettings(x_max=0)


class TestGlobalConfig:
    """Tests for global config singleton."""

    def test_get_config_returns_loader(self):
        """Test that get_config returns a ConfigLoader."""
        config = get_config()
        assert isinstance(config, ConfigLoader)

    def test_get_config_is_singleton(self):
        """Test that get_config returns the same instance."""
        config1 = get_config()
        config2 = get_config()
        assert config1 is config2

    def test_reload_config_creates_new(self):
        """Test that reload_config creates new instance."""
        config1 = get_config()
        config2 = reload_config()

        assert config2 is not config1
        assert config2.settings.limits.k_max == 40
