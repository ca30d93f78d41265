"""
Tests for layered configuration loading
"""
import json

import pytest

from src.utils.config_loader import ConfigLoader, read_key_value_file, write_key_value_file
from src.utils.errors import ArtifactIOError, ConfigError


@pytest.fixture(autouse=True)
def _no_env(monkeypatch):
    for var in ConfigLoader.ENV_MAPPINGS:
        monkeypatch.delenv(var, raising=False)
    monkeypatch.setattr("src.utils.config_loader.load_dotenv", lambda: None)


def test_defaults_loaded():
    """Test the shipped defaults file"""
    loader = ConfigLoader()
    assert loader.get("walk.l") == 10
    assert loader.get("logging.level") == "INFO"
    assert loader.get("network.retry_attempts") == 5
    assert loader.get("missing.key", "fallback") == "fallback"
    assert loader.validate() == {}


def test_flat_settings_cover_every_section():
    """Test section keys flatten into one namespace"""
    flat = ConfigLoader().flat_settings()
    assert flat["l"] == 10
    assert flat["train_fraction"] == 0.5
    assert flat["k_in"] == 1
    assert "level" not in flat


def test_key_value_file_overrides_defaults(tmp_path):
    """Test the --config layer"""
    path = tmp_path / "run.config"
    path.write_text("# comment\n\nl = 6\nmin-emit-length=3\n")
    flat = ConfigLoader(str(path)).flat_settings()
    assert flat["l"] == "6"
    assert flat["min_emit_length"] == "3"


def test_unknown_key_rejected(tmp_path):
    """Test typos in a key=value file are errors"""
    path = tmp_path / "run.config"
    path.write_text("lenght=6\n")
    with pytest.raises(ConfigError, match="lenght"):
        ConfigLoader(str(path))


def test_malformed_line_rejected(tmp_path):
    """Test a line without '='"""
    path = tmp_path / "run.config"
    path.write_text("l 6\n")
    with pytest.raises(ConfigError):
        read_key_value_file(str(path))


def test_missing_config_file(tmp_path):
    """Test an unreadable --config path"""
    with pytest.raises(ArtifactIOError):
        ConfigLoader(str(tmp_path / "missing.config"))


def test_environment_layer(monkeypatch, tmp_path):
    """Test env vars outrank the key=value file"""
    path = tmp_path / "run.config"
    path.write_text("workers=2\n")
    monkeypatch.setenv("TWMDG_WORKERS", "4")
    monkeypatch.setenv("ETHERSCAN_API_KEY", "from-env")
    monkeypatch.setenv("TWMDG_LOG_LEVEL", "DEBUG")
    loader = ConfigLoader(str(path))
    flat = loader.flat_settings()
    assert flat["workers"] == "4"
    assert flat["api_key"] == "from-env"
    assert loader.get("logging.level") == "DEBUG"


def test_resolve_flags_win(tmp_path):
    """Test CLI overrides beat every layer; None means not given"""
    path = tmp_path / "run.config"
    path.write_text("l=6\nr=3\n")
    settings = ConfigLoader(str(path)).resolve({"l": 8, "r": None})
    assert settings["l"] == 8
    assert settings["r"] == "3"


def test_custom_defaults_file(tmp_path):
    """Test a replacement defaults file and a bad logging level"""
    defaults = tmp_path / "defaults.json"
    defaults.write_text(json.dumps({"logging": {"level": "LOUD"}, "walk": {"l": 4}}))
    loader = ConfigLoader(defaults_file=str(defaults))
    assert loader.flat_settings() == {"l": 4}
    assert "logging.level" in loader.validate()


def test_duplicate_key_across_sections(tmp_path):
    """Test one setting name cannot live in two sections"""
    defaults = tmp_path / "defaults.json"
    defaults.write_text(json.dumps({"walk": {"seed": 1}, "run": {"seed": 2}}))
    with pytest.raises(ConfigError):
        ConfigLoader(defaults_file=str(defaults)).flat_settings()


def test_invalid_defaults_json(tmp_path):
    """Test a corrupt defaults file"""
    defaults = tmp_path / "defaults.json"
    defaults.write_text("{not json")
    with pytest.raises(ConfigError):
        ConfigLoader(defaults_file=str(defaults))


def test_write_key_value_file(tmp_path):
    """Test sorted output, list joining, and secrets omitted"""
    path = tmp_path / "out.config"
    write_key_value_file(str(path), {
        "r": 3, "l": 6, "methods": ["twmdg-biased", "static-unbiased"],
        "verify": False, "center": None, "api_key": "SECRET",
    })
    assert path.read_text() == "l=6\nmethods=twmdg-biased,static-unbiased\nr=3\nverify=false\n"
    assert read_key_value_file(str(path)) == {
        "l": "6", "methods": "twmdg-biased,static-unbiased", "r": "3", "verify": "false",
    }


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
