"""
Tests for Network Timeouts
"""
import pytest

from src.utils.network_timeouts import DEFAULT_NETWORK, NetworkTimeouts


def test_default_timeouts():
    """Test default timeout values"""
    timeouts = NetworkTimeouts({})

    assert timeouts.connect_timeout == 5
    assert timeouts.read_timeout == 30
    assert timeouts.retry_attempts == 5
    assert timeouts.rate_limit_per_second == 5.0
    assert timeouts.circuit_failure_threshold == 5
    assert timeouts.circuit_timeout_seconds == 60


def test_none_config_uses_defaults():
    """Test a missing network section"""
    assert NetworkTimeouts(None).get_request_timeout() == (5, 30)


def test_custom_timeouts():
    """Test custom timeout configuration"""
    timeouts = NetworkTimeouts({"connect_timeout": 3, "read_timeout": 60})
    assert timeouts.get_request_timeout() == (3, 60)
    assert timeouts.retry_attempts == DEFAULT_NETWORK["retry_attempts"]


def test_backoff_delays():
    """Test exponential backoff, one delay between each pair of attempts"""
    assert NetworkTimeouts({}).backoff_delays() == (1.0, 2.0, 4.0, 8.0)
    custom = NetworkTimeouts({"retry_attempts": 3, "retry_base_seconds": 0.25})
    assert custom.backoff_delays() == (0.25, 0.5)


def test_single_attempt_has_no_backoff():
    """Test retry_attempts=1"""
    assert NetworkTimeouts({"retry_attempts": 1}).backoff_delays() == ()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
