"""
Circuit Breaker
Stops hammering the transaction API after repeated transport failures
"""
import threading
import time
from enum import Enum
from typing import Callable, Dict, Optional

from src.utils.errors import ApiError
from src.utils.logging_factory import get_logger

logger = get_logger(__name__)


class CircuitState(Enum):
    """Circuit breaker states"""

    CLOSED = "closed"  # Normal operation
    OPEN = "open"  # Failing, reject calls
    HALF_OPEN = "half_open"  # Probing for recovery


class CircuitOpenError(ApiError):
    """Raised when a call is rejected because the circuit is open."""


class CircuitBreaker:
    """Circuit breaker for remote provider calls"""

    def __init__(
        self,
        name: str,
        failure_threshold: int = 5,
        timeout_seconds: float = 60,
        success_threshold: int = 1,
        clock: Callable[[], float] = time.monotonic,
    ):
        """
        Args:
            name: Circuit name for logging
            failure_threshold: Consecutive failed calls before opening
            timeout_seconds: Wait before an open circuit allows a probe
            success_threshold: Consecutive probe successes needed to close
            clock: Monotonic time source (injectable for tests)
        """
        self.name = name
        self.failure_threshold = failure_threshold
        self.timeout = timeout_seconds
        self.success_threshold = success_threshold
        self._clock = clock

        self.state = CircuitState.CLOSED
        self.failure_count = 0
        self.success_count = 0
        self.last_failure_time: Optional[float] = None
        self._lock = threading.Lock()

        logger.debug(
            f"Circuit '{name}' ready: fail_threshold={failure_threshold}, timeout={timeout_seconds}s"
        )

    def call(self, func: Callable, *args, **kwargs):
        """
        Execute func through the breaker

        Raises:
            CircuitOpenError: circuit is open and the timeout has not elapsed
            Exception: whatever func raised
        """
        with self._lock:
            if self.state == CircuitState.OPEN:
                if self._should_attempt_reset():
                    logger.info(f"Circuit '{self.name}' OPEN -> HALF_OPEN")
                    self.state = CircuitState.HALF_OPEN
                    self.success_count = 0
                else:
                    raise CircuitOpenError(f"circuit '{self.name}' is open after repeated failures")

        try:
            result = func(*args, **kwargs)
        except Exception:
            self._on_failure()
            raise
        self._on_success()
        return result

    def _should_attempt_reset(self) -> bool:
        if self.last_failure_time is None:
            return False
        return self._clock() - self.last_failure_time >= self.timeout

    def _on_success(self):
        with self._lock:
            self._record_success()

    def _record_success(self):
        if self.state == CircuitState.HALF_OPEN:
            self.success_count += 1
            if self.success_count >= self.success_threshold:
                logger.info(f"Circuit '{self.name}' CLOSED (recovered)")
                self.state = CircuitState.CLOSED
                self.failure_count = 0
                self.success_count = 0
        else:
            self.failure_count = 0

    def _on_failure(self):
        with self._lock:
            self._record_failure()

    def _record_failure(self):
        self.last_failure_time = self._clock()
        if self.state == CircuitState.HALF_OPEN:
            self._open()
        elif self.state == CircuitState.CLOSED:
            self.failure_count += 1
            if self.failure_count >= self.failure_threshold:
                self._open()

    def _open(self):
        logger.error(
            f"Circuit '{self.name}' OPEN ({self.failure_count}/{self.failure_threshold} failures)"
        )
        self.state = CircuitState.OPEN

    def reset(self):
        """Manually close the circuit"""
        with self._lock:
            self.state = CircuitState.CLOSED
            self.failure_count = 0
            self.success_count = 0
            self.last_failure_time = None

    def get_status(self) -> Dict:
        return {
            "name": self.name,
            "state": self.state.value,
            "failure_count": self.failure_count,
            "success_count": self.success_count,
            "last_failure_time": self.last_failure_time,
        }
