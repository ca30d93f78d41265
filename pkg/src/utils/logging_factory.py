"""
Logging Factory
Single source of truth for toolkit logging
"""

import logging
import logging.handlers
import os
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict

from .structured_logging import RunContextFilter, StructuredFormatter


class LogLevel:
    """Custom log levels"""
    METRICS = 21  # Between INFO and WARNING


logging.addLevelName(LogLevel.METRICS, "METRICS")


class ColoredFormatter(logging.Formatter):
    """Colored console formatter for interactive runs"""

    COLORS = {
        'DEBUG': '\033[36m',      # Cyan
        'INFO': '\033[32m',       # Green
        'METRICS': '\033[96m',    # Light Cyan
        'WARNING': '\033[33m',    # Yellow
        'ERROR': '\033[31m',      # Red
        'CRITICAL': '\033[35m',   # Magenta
        'RESET': '\033[0m'
    }

    def format(self, record):
        levelname = record.levelname
        if levelname in self.COLORS:
            record.levelname = f"{self.COLORS[levelname]}{levelname}{self.COLORS['RESET']}"

        result = super().format(record)

        # Restore for the other handlers
        record.levelname = levelname
        return result


def _level(name: str, fallback: int) -> int:
    return getattr(logging, str(name).upper(), fallback)


class LoggingFactory:
    """Factory for creating and configuring loggers"""

    _configured = False
    _config: Dict[str, Any] = {}
    _environment = "production"

    @classmethod
    def configure(cls, config: Dict[str, Any], environment: str = "production"):
        """
        Configure global logging from the `logging` config section

        Args:
            config: Logging configuration dictionary
            environment: development or production (controls console colours)
        """
        if cls._configured:
            return

        cls._config = config
        cls._environment = environment

        root_logger = logging.getLogger()
        root_logger.setLevel(_level(config.get("level", "INFO"), logging.INFO))
        root_logger.handlers.clear()

        run_filter = RunContextFilter()
        outputs = config.get("outputs", {})

        if outputs.get("file", {}).get("enabled", False):
            cls._add_file_handler(root_logger, config, run_filter)

        if outputs.get("json_file", {}).get("enabled", False):
            cls._add_json_handler(root_logger, config, run_filter)

        if outputs.get("console", {}).get("enabled", True):
            cls._add_console_handler(root_logger, config, run_filter, environment)

        cls._configured = True

        root_logger.debug("Logging system configured", extra={
            "environment": environment,
            "log_dir": config.get("log_dir", "logs")
        })

    @classmethod
    def reset(cls):
        """Drop all handlers so the next configure() call takes effect."""
        logging.getLogger().handlers.clear()
        cls._configured = False
        cls._config = {}

    @classmethod
    def _log_path(cls, config: Dict[str, Any], suffix: str) -> str:
        log_dir = config.get("log_dir", "logs")
        Path(log_dir).mkdir(parents=True, exist_ok=True)
        return os.path.join(log_dir, f"twmdg_{datetime.now().strftime('%Y%m%d')}.{suffix}")

    @classmethod
    def _add_file_handler(cls, logger, config, run_filter):
        """Add rotating file handler with detailed format"""
        file_config = config.get("outputs", {}).get("file", {})
        rotation = file_config.get("rotation", {})

        handler = logging.handlers.RotatingFileHandler(
            cls._log_path(config, "log"),
            maxBytes=rotation.get("max_size_mb", 50) * 1024 * 1024,
            backupCount=rotation.get("backup_count", 5),
            encoding='utf-8'
        )
        handler.setFormatter(logging.Formatter(
            "%(asctime)s [%(run_id)s] %(levelname)-8s [%(name)s:%(funcName)s:%(lineno)d] %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
            defaults={"run_id": "-"}
        ))
        handler.addFilter(run_filter)
        handler.setLevel(_level(file_config.get("level", "DEBUG"), logging.DEBUG))
        logger.addHandler(handler)

    @classmethod
    def _add_json_handler(cls, logger, config, run_filter):
        """Add JSON-lines handler for machine parsing"""
        json_config = config.get("outputs", {}).get("json_file", {})

        handler = logging.handlers.RotatingFileHandler(
            cls._log_path(config, "json"),
            maxBytes=50 * 1024 * 1024,
            backupCount=5,
            encoding='utf-8'
        )
        handler.setFormatter(StructuredFormatter())
        handler.addFilter(run_filter)
        handler.setLevel(_level(json_config.get("level", "DEBUG"), logging.DEBUG))
        logger.addHandler(handler)

    @classmethod
    def _add_console_handler(cls, logger, config, run_filter, environment):
        """Add stderr handler; stdout is reserved for command output"""
        console_config = config.get("outputs", {}).get("console", {})
        colored = console_config.get("colored", True) and environment != "production"

        handler = logging.StreamHandler(sys.stderr)
        if colored:
            formatter = ColoredFormatter(
                "%(asctime)s [%(run_id)s] %(levelname)s [%(name)s] %(message)s",
                datefmt="%H:%M:%S",
                defaults={"run_id": "-"}
            )
        else:
            formatter = logging.Formatter(
                "[%(run_id)s] %(levelname)s [%(name)s] %(message)s",
                defaults={"run_id": "-"}
            )

        handler.setFormatter(formatter)
        handler.addFilter(run_filter)
        handler.setLevel(_level(console_config.get("level", "INFO"), logging.INFO))
        logger.addHandler(handler)

    @classmethod
    def get_logger(cls, name: str) -> logging.Logger:
        """
        Get a logger with a `metrics()` method bound to the METRICS level

        Args:
            name: Logger name (usually __name__)
        """
        logger = logging.getLogger(name)

        if not hasattr(logger, "metrics"):
            def metrics(msg, *args, **kwargs):
                if logger.isEnabledFor(LogLevel.METRICS):
                    logger._log(LogLevel.METRICS, msg, args, **kwargs)

            logger.metrics = metrics

        return logger


def get_logger(name: str) -> logging.Logger:
    """Convenience wrapper around LoggingFactory.get_logger."""
    return LoggingFactory.get_logger(name)
