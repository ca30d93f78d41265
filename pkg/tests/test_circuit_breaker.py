"""
Tests for Circuit Breaker
"""
import threading

import pytest

from src.utils.circuit_breaker import CircuitBreaker, CircuitOpenError, CircuitState
from src.utils.errors import ApiError


class FakeClock:
    def __init__(self):
        self.now = 0.0

    def __call__(self):
        return self.now


def fail_func():
    raise ApiError("failed")


def success_func():
    return "ok"


def _opened(clock, threshold=2, **kwargs):
    cb = CircuitBreaker("test", failure_threshold=threshold, timeout_seconds=10, clock=clock, **kwargs)
    for _ in range(threshold):
        with pytest.raises(ApiError):
            cb.call(fail_func)
    return cb


def test_circuit_breaker_closed_state():
    """Test circuit breaker starts in CLOSED state"""
    cb = CircuitBreaker("test", failure_threshold=3, timeout_seconds=1)
    assert cb.state == CircuitState.CLOSED


def test_circuit_breaker_success():
    """Test successful calls keep circuit closed"""
    cb = CircuitBreaker("test", failure_threshold=3)
    assert cb.call(success_func) == "ok"
    assert cb.state == CircuitState.CLOSED
    assert cb.failure_count == 0


def test_success_resets_failure_count():
    """Test only consecutive failures count"""
    cb = CircuitBreaker("test", failure_threshold=3)
    for _ in range(2):
        with pytest.raises(ApiError):
            cb.call(fail_func)
    cb.call(success_func)
    assert cb.failure_count == 0
    assert cb.state == CircuitState.CLOSED


def test_circuit_breaker_failure_opens():
    """Test consecutive failures open circuit"""
    cb = _opened(FakeClock(), threshold=3)
    assert cb.state == CircuitState.OPEN
    assert cb.failure_count == 3


def test_circuit_breaker_open_rejects():
    """Test open circuit rejects calls without running them"""
    cb = _opened(FakeClock())
    calls = []
    with pytest.raises(CircuitOpenError):
        cb.call(calls.append, 1)
    assert calls == []


def test_open_error_is_api_error():
    """Test rejection maps to the API exit status"""
    assert issubclass(CircuitOpenError, ApiError)


def test_circuit_breaker_half_open_timeout():
    """Test circuit probes after timeout and reopens on failure"""
    clock = FakeClock()
    cb = _opened(clock)
    clock.now = 10.0
    with pytest.raises(ApiError):
        cb.call(fail_func)
    assert cb.state == CircuitState.OPEN


def test_circuit_breaker_recovery():
    """Test circuit closes after successful recovery"""
    clock = FakeClock()
    cb = _opened(clock, success_threshold=2)
    clock.now = 10.0

    assert cb.call(success_func) == "ok"
    assert cb.state == CircuitState.HALF_OPEN
    assert cb.call(success_func) == "ok"
    assert cb.state == CircuitState.CLOSED


def test_circuit_stays_open_before_timeout():
    """Test no probe is allowed early"""
    clock = FakeClock()
    cb = _opened(clock)
    clock.now = 9.9
    with pytest.raises(CircuitOpenError):
        cb.call(success_func)


def test_circuit_breaker_half_open_failure():
    """Test failure in HALF_OPEN reopens circuit"""
    clock = FakeClock()
    cb = _opened(clock, success_threshold=2)
    clock.now = 10.0

    cb.call(success_func)
    assert cb.state == CircuitState.HALF_OPEN
    with pytest.raises(ApiError):
        cb.call(fail_func)
    assert cb.state == CircuitState.OPEN


def test_circuit_breaker_reset():
    """Test manual reset"""
    cb = _opened(FakeClock())
    cb.reset()
    assert cb.state == CircuitState.CLOSED
    assert cb.failure_count == 0


def test_get_status():
    """Test status snapshot"""
    clock = FakeClock()
    clock.now = 3.0
    cb = _opened(clock)
    assert cb.get_status() == {
        "name": "test",
        "state": "open",
        "failure_count": 2,
        "success_count": 0,
        "last_failure_time": 3.0,
    }


def test_concurrent_failures_counted_once_each():
    """Test failures from many threads all reach the counter"""
    cb = CircuitBreaker("test", failure_threshold=10_000)
    barrier = threading.Barrier(8)

    def worker():
        barrier.wait()
        for _ in range(200):
            with pytest.raises(ApiError):
                cb.call(fail_func)

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert cb.failure_count == 1600
    assert cb.state == CircuitState.CLOSED


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
