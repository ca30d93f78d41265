"""
Structured Logging with Run IDs
Every record emitted during one CLI invocation carries the same run id
"""
import json
import logging
import uuid
from contextvars import ContextVar
from datetime import datetime, timezone
from typing import Optional

run_id: ContextVar[Optional[str]] = ContextVar("run_id", default=None)

# LogRecord attributes that are not user-supplied extras
_RESERVED_ATTRS = frozenset(
    {
        "name",
        "msg",
        "args",
        "created",
        "filename",
        "funcName",
        "levelname",
        "levelno",
        "lineno",
        "module",
        "msecs",
        "message",
        "pathname",
        "process",
        "processName",
        "relativeCreated",
        "thread",
        "threadName",
        "taskName",
        "exc_info",
        "exc_text",
        "stack_info",
        "run_id",
    }
)


class StructuredFormatter(logging.Formatter):
    """
    JSON-lines formatter

    Emits one object per record with the run id and any `extra=` fields.
    """

    def format(self, record: logging.LogRecord) -> str:
        entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        current = getattr(record, "run_id", None) or run_id.get()
        if current:
            entry["run_id"] = current

        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)

        for key, value in record.__dict__.items():
            if key in _RESERVED_ATTRS or key.startswith("_"):
                continue
            try:
                json.dumps(value)
            except (TypeError, ValueError):
                value = repr(value)
            entry[key] = value

        return json.dumps(entry)


class RunContextFilter(logging.Filter):
    """Stamps the current run id onto each record."""

    def filter(self, record: logging.LogRecord) -> bool:
        current = run_id.get()
        if current:
            record.run_id = current
        return True


def set_run_id(value: Optional[str] = None) -> str:
    """
    Set the run id for the current context

    Args:
        value: Explicit id, or None to generate `run-<8 hex>`

    Returns:
        The id that was set
    """
    if value is None:
        value = f"run-{uuid.uuid4().hex[:8]}"
    run_id.set(value)
    return value


def get_run_id() -> Optional[str]:
    return run_id.get()


def clear_run_id():
    run_id.set(None)
