"""
Tests for Structured Logging
"""
import json
import logging
import sys

import pytest

from src.utils.structured_logging import (
    RunContextFilter,
    StructuredFormatter,
    clear_run_id,
    get_run_id,
    set_run_id,
)


def _record(msg="Test message", level=logging.INFO, exc_info=None, **extra):
    record = logging.LogRecord(
        name="test_logger",
        level=level,
        pathname="test.py",
        lineno=42,
        msg=msg,
        args=(),
        exc_info=exc_info,
    )
    for key, value in extra.items():
        setattr(record, key, value)
    return record


@pytest.fixture(autouse=True)
def _clear():
    clear_run_id()
    yield
    clear_run_id()


def test_set_and_get_run_id():
    """Test setting and getting the run id"""
    assert set_run_id("run-test") == "run-test"
    assert get_run_id() == "run-test"
    clear_run_id()
    assert get_run_id() is None


def test_auto_generate_run_id():
    """Test generated ids look like run-<8 hex>"""
    value = set_run_id()
    assert value.startswith("run-")
    assert len(value) == 12
    int(value[4:], 16)
    assert get_run_id() == value


def test_run_context_filter():
    """Test filter stamps the run id on records"""
    set_run_id("filter-test")
    record = _record()
    assert RunContextFilter().filter(record)
    assert record.run_id == "filter-test"


def test_filter_without_run_id():
    """Test no attribute is added outside a run"""
    record = _record()
    RunContextFilter().filter(record)
    assert not hasattr(record, "run_id")


def test_structured_formatter():
    """Test JSON formatter"""
    set_run_id("format-test")
    entry = json.loads(StructuredFormatter().format(_record()))

    assert entry["level"] == "INFO"
    assert entry["logger"] == "test_logger"
    assert entry["message"] == "Test message"
    assert entry["line"] == 42
    assert entry["run_id"] == "format-test"
    assert "timestamp" in entry


def test_structured_formatter_extra_fields():
    """Test extra= fields become top-level keys; unserialisable ones are repr'd"""
    entry = json.loads(StructuredFormatter().format(
        _record(stage="generate_corpus", duration_ms=12.5, shape=object)
    ))
    assert entry["stage"] == "generate_corpus"
    assert entry["duration_ms"] == 12.5
    assert entry["shape"] == repr(object)


def test_structured_formatter_with_exception():
    """Test formatter includes exception info"""
    try:
        raise ValueError("Test error")
    except ValueError:
        exc_info = sys.exc_info()

    entry = json.loads(StructuredFormatter().format(_record("Error occurred", logging.ERROR, exc_info)))
    assert "ValueError" in entry["exception"]
    assert "Test error" in entry["exception"]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
