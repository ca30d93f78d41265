"""
Shared infrastructure: logging, configuration, errors, remote-call guards
"""

from .config_loader import ConfigLoader, load_config
from .errors import (
    ApiError,
    ArtifactIOError,
    ConfigError,
    MathError,
    ParseError,
    TwmdgError,
    UsageError,
)
from .logging_factory import LoggingFactory, get_logger

__all__ = [
    "ConfigLoader",
    "load_config",
    "ApiError",
    "ArtifactIOError",
    "ConfigError",
    "MathError",
    "ParseError",
    "TwmdgError",
    "UsageError",
    "LoggingFactory",
    "get_logger",
]
