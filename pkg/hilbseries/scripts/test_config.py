import os
from fractions import Fraction

import pytest

from backend.utils.config import ConfigManager, ConfigurationError, EngineSettings


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    environment = {key: value for key, value in os.environ.items() if key not in ConfigManager.OPTIONAL_ENV_VARS}
    monkeypatch.setattr(os, "environ", environment)
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(ConfigManager, "_settings", None)


def test_defaults():
    settings = ConfigManager.load_settings()
    assert settings == EngineSettings()
    assert (settings.max_weight, settings.macdonald_max_weight, settings.h_cap) == (8, 6, 2)


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("HILBSERIES_MAX_WEIGHT", "5")
    monkeypatch.setenv("HILBSERIES_LOG_LEVEL", "debug")
    monkeypatch.setenv("HILBSERIES_SLOPES", "1/2, 3/5")
    monkeypatch.setenv("HILBSERIES_SLOPE_METHOD", "Numeric")
    settings = ConfigManager.load_settings()
    assert settings.max_weight == 5
    assert settings.log_level == "DEBUG"
    assert settings.slopes == (Fraction(1, 2), Fraction(3, 5))
    assert settings.slope_method == "numeric"


def test_dotenv_file(tmp_path):
    (tmp_path / ".env").write_text("HILBSERIES_JOBS=3\n")
    assert ConfigManager.load_settings().jobs == 3


def test_invalid_environment(monkeypatch):
    cases = [
        ("HILBSERIES_MAX_WEIGHT", "huit"),
        ("HILBSERIES_JOBS", "0"),
        ("HILBSERIES_LOG_LEVEL", "VERBOSE"),
        ("HILBSERIES_SLOPES", "1/2"),
        ("HILBSERIES_SLOPES", "0, 1/3"),
        ("HILBSERIES_SLOPE_METHOD", "exact"),
    ]
    for var, value in cases:
        monkeypatch.setenv(var, value)
        with pytest.raises(ConfigurationError):
            ConfigManager.load_settings()
        monkeypatch.delenv(var)


def test_command_line_wins(monkeypatch):
    monkeypatch.setenv("HILBSERIES_MAX_WEIGHT", "5")
    ConfigManager.setup_environment()
    settings = ConfigManager.apply_overrides(max_weight=7, jobs=None)
    assert settings.max_weight == 7
    assert settings.jobs == 1
    assert ConfigManager.settings() is settings
