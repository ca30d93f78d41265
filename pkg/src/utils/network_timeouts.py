"""
Network Timeout and Retry Configuration
Reads the `network` config section used by the transaction API client
"""
from typing import Dict, Tuple

from src.utils.logging_factory import get_logger

logger = get_logger(__name__)


DEFAULT_NETWORK = {
    "connect_timeout": 5,
    "read_timeout": 30,
    "retry_attempts": 5,
    "retry_base_seconds": 1.0,
    "rate_limit_per_second": 5.0,
    "circuit_failure_threshold": 5,
    "circuit_timeout_seconds": 60,
}


class NetworkTimeouts:
    """Timeouts, retry schedule and rate limit for remote calls"""

    def __init__(self, config: Dict):
        """
        Config keys:
            connect_timeout: Time to establish a connection (default 5s)
            read_timeout: Time to wait for a page body (default 30s; 10k-row pages are large)
            retry_attempts: Total attempts per request (default 5)
            retry_base_seconds: First backoff delay, doubled per retry (default 1s)
            rate_limit_per_second: Global request ceiling (default 5/s)
        """
        merged = {**DEFAULT_NETWORK, **(config or {})}
        self.connect_timeout = merged["connect_timeout"]
        self.read_timeout = merged["read_timeout"]
        self.retry_attempts = int(merged["retry_attempts"])
        self.retry_base_seconds = float(merged["retry_base_seconds"])
        self.rate_limit_per_second = float(merged["rate_limit_per_second"])
        self.circuit_failure_threshold = int(merged["circuit_failure_threshold"])
        self.circuit_timeout_seconds = float(merged["circuit_timeout_seconds"])

        logger.debug(
            f"Network timeouts: connect={self.connect_timeout}s, read={self.read_timeout}s, "
            f"attempts={self.retry_attempts}, rate={self.rate_limit_per_second}/s"
        )

    def get_request_timeout(self) -> Tuple[float, float]:
        """(connect_timeout, read_timeout) tuple for requests"""
        return (self.connect_timeout, self.read_timeout)

    def backoff_delays(self) -> Tuple[float, ...]:
        """Sleep before each retry: base, 2·base, 4·base, ... (attempts - 1 entries)"""
        return tuple(self.retry_base_seconds * (2 ** i) for i in range(self.retry_attempts - 1))
