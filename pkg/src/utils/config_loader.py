"""
Configuration Loader
Layered settings: defaults.json < key=value file < environment < CLI flags
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

from dotenv import load_dotenv

from src.utils.errors import ArtifactIOError, ConfigError
from src.utils.logging_factory import get_logger

logger = get_logger(__name__)

DEFAULTS_FILE = Path(__file__).resolve().parents[2] / "config" / "defaults.json"

# Sections whose keys are flat run settings (key names mirror CLI flags)
SETTING_SECTIONS = ("run", "walk", "baseline", "sgns", "eval", "stats", "synth", "crawl", "sweep")


class ConfigLoader:
    """Loads and merges run settings.

    Layers (in order of precedence, lowest first):
    1. defaults.json - factory defaults for every setting
    2. key=value file - flat overrides passed with --config
    3. Environment variables - secrets and deployment overrides (.env honoured)
    4. Command-line flags - applied by resolve()
    """

    # Never echoed into written .config files
    SENSITIVE_SETTINGS = {"api_key"}

    ENV_MAPPINGS = {
        "ETHERSCAN_API_KEY": ("crawl", "api_key"),
        "TWMDG_WORKERS": ("run", "workers"),
        "TWMDG_LOG_LEVEL": ("logging", "level"),
    }

    def __init__(self, config_file: Optional[str] = None, defaults_file: Optional[str] = None):
        """
        Args:
            config_file: Optional flat key=value file
            defaults_file: JSON defaults (defaults to config/defaults.json in the repo)
        """
        self.defaults_file = Path(defaults_file) if defaults_file else DEFAULTS_FILE
        self.config_file = config_file
        self.config: Dict[str, Any] = {}

        # Layer 1
        try:
            with open(self.defaults_file, encoding="utf-8") as f:
                self.config = json.load(f)
        except FileNotFoundError as e:
            raise ArtifactIOError(f"defaults file not found: {self.defaults_file}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON in {self.defaults_file}: {e}") from e
        logger.debug(f"Defaults loaded from {self.defaults_file}")

        self._resolve_env_placeholders(self.config)

        # Layer 2
        self.file_settings: Dict[str, str] = {}
        if config_file:
            self.file_settings = read_key_value_file(config_file)
            known = self.known_settings()
            unknown = sorted(set(self.file_settings) - known)
            if unknown:
                raise ConfigError(f"unknown keys in {config_file}: {', '.join(unknown)}")
            logger.info(f"Config loaded from {config_file} ({len(self.file_settings)} keys)")

        # Layer 3
        self.env_settings: Dict[str, str] = {}
        load_dotenv()
        self.load_from_env()

    def load_from_env(self) -> None:
        """Apply explicit environment mappings; run settings also outrank the key=value file."""
        for env_var, path in self.ENV_MAPPINGS.items():
            value = os.getenv(env_var)
            if value:
                self._set_nested_value(self.config, path, value)
                if path[0] in SETTING_SECTIONS:
                    self.env_settings[path[-1]] = value
                logger.debug(f"Config from env: {env_var}")

    def _set_nested_value(self, config: dict, path: tuple, value: Any) -> None:
        for key in path[:-1]:
            config = config.setdefault(key, {})
        config[path[-1]] = value

    def _resolve_env_placeholders(self, config: dict) -> None:
        """Recursively resolve ${ENV_VAR} placeholders."""
        for key, value in config.items():
            if isinstance(value, dict):
                self._resolve_env_placeholders(value)
            elif isinstance(value, str) and value.startswith("${") and value.endswith("}"):
                env_value = os.getenv(value[2:-1])
                config[key] = env_value if env_value else None

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a value by dot-notation key (e.g. 'logging.level')
        """
        value = self.config
        for k in key.split("."):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def known_settings(self) -> set:
        return {key for section in SETTING_SECTIONS for key in self.config.get(section, {})}

    def flat_settings(self) -> Dict[str, Any]:
        """Defaults, then the key=value file, then environment, flattened."""
        flat: Dict[str, Any] = {}
        for section in SETTING_SECTIONS:
            for key, value in self.config.get(section, {}).items():
                if key in flat:
                    raise ConfigError(f"setting '{key}' defined in more than one section")
                flat[key] = value
        flat.update(self.file_settings)
        flat.update(self.env_settings)
        return flat

    def resolve(self, overrides: Dict[str, Any]) -> Dict[str, Any]:
        """
        Merge CLI flags (non-None values) over the lower layers

        Returns:
            Flat settings dict ready for RunConfig validation
        """
        settings = self.flat_settings()
        for key, value in overrides.items():
            if value is not None:
                settings[key] = value
        return settings

    def validate(self) -> Dict[str, str]:
        """Sanity-check non-setting sections. Returns field -> message."""
        errors: Dict[str, str] = {}
        level = self.get("logging.level", "INFO")
        if str(level).upper() not in ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]:
            errors["logging.level"] = "Invalid logging level"
        if not isinstance(self.get("network", {}), dict):
            errors["network"] = "Must be an object"
        for k, v in errors.items():
            logger.error(f"  {k}: {v}")
        return errors


def read_key_value_file(path: str) -> Dict[str, str]:
    """
    Parse a flat key=value file

    Blank lines and lines starting with '#' are ignored; hyphens in keys
    are normalised to underscores.
    """
    settings: Dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise ArtifactIOError(f"cannot read config file {path}: {e}") from e

    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{number}: expected key=value")
        key, value = line.split("=", 1)
        key = key.strip().replace("-", "_")
        if not key:
            raise ConfigError(f"{path}:{number}: empty key")
        settings[key] = value.strip()
    return settings


def write_key_value_file(path: str, settings: Dict[str, Any], exclude: Iterable[str] = ()) -> None:
    """Write settings as sorted key=value lines; lists are comma-joined, None is skipped."""
    skip = set(exclude) | ConfigLoader.SENSITIVE_SETTINGS
    lines = []
    for key in sorted(settings):
        value = settings[key]
        if key in skip or value is None:
            continue
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{key}={value}")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write("\n".join(lines) + "\n")
    except OSError as e:
        raise ArtifactIOError(f"cannot write config file {path}: {e}") from e


def load_config(config_file: Optional[str] = None) -> ConfigLoader:
    """Factory function to load configuration."""
    return ConfigLoader(config_file)
