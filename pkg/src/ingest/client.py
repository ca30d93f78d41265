"""
Account-Transactions Providers
Live Etherscan HTTP client and a recorded-fixture stand-in
"""

import json
import os
import threading
import time
from typing import Callable, Dict, List, Optional, Protocol, Tuple

import requests

from src.ingest.etherscan import EMPTY_PAGE
from src.utils.circuit_breaker import CircuitBreaker, CircuitOpenError
from src.utils.errors import ApiError, ArtifactIOError
from src.utils.logging_factory import get_logger
from src.utils.network_timeouts import NetworkTimeouts
from src.utils.rate_limiter import RateLimiter

logger = get_logger(__name__)

DEFAULT_API_URL = "https://api.etherscan.io/api"
RETRY_STATUS = {429, 500, 502, 503, 504}


class TransactionProvider(Protocol):
    """Anything that can return one raw JSON page of an account's transactions."""

    def fetch_page(self, address: str, page: int, offset: int) -> str:
        ...


class TransientApiError(ApiError):
    """Failure worth retrying: transport error, 429/5xx, or a rate-limit body."""


def _is_rate_limit_body(text: str) -> bool:
    try:
        body = json.loads(text)
    except json.JSONDecodeError:
        return False
    if not isinstance(body, dict) or str(body.get("status")) != "0":
        return False
    return "rate limit" in str(body.get("result", "")).lower()


class EtherscanClient:
    """
    `txlist` client over a shared requests.Session

    Every request waits for the global rate limiter, runs through a circuit
    breaker, and is retried with exponential backoff (network.retry_*).
    """

    def __init__(
        self,
        api_key: Optional[str],
        api_url: str = DEFAULT_API_URL,
        network_config: Optional[Dict] = None,
        rate_limit: Optional[float] = None,
        session: Optional[requests.Session] = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.api_key = api_key or ""
        self.api_url = api_url
        self.timeouts = NetworkTimeouts(network_config or {})
        self.session = session or requests.Session()
        self._sleep = sleep
        self.rate_limiter = RateLimiter(rate_limit or self.timeouts.rate_limit_per_second, sleep=sleep)
        self.circuit_breaker = CircuitBreaker(
            name="etherscan",
            failure_threshold=self.timeouts.circuit_failure_threshold,
            timeout_seconds=self.timeouts.circuit_timeout_seconds,
        )
        if not self.api_key:
            logger.warning("No Etherscan API key set; requests run at the anonymous rate")

    def _params(self, address: str, page: int, offset: int) -> Dict[str, str]:
        return {
            "module": "account",
            "action": "txlist",
            "address": address,
            "startblock": "0",
            "endblock": "99999999",
            "page": str(page),
            "offset": str(offset),
            "sort": "asc",
            "apikey": self.api_key,
        }

    def _get(self, params: Dict[str, str]) -> str:
        try:
            response = self.session.get(
                self.api_url, params=params, timeout=self.timeouts.get_request_timeout()
            )
        except requests.exceptions.RequestException as e:
            raise TransientApiError(f"transport error: {e}") from e
        if response.status_code in RETRY_STATUS:
            raise TransientApiError(f"HTTP {response.status_code}")
        if response.status_code != 200:
            raise ApiError(f"HTTP {response.status_code}: {response.text[:200]}")
        if _is_rate_limit_body(response.text):
            raise TransientApiError("provider rate limit reached")
        return response.text

    def fetch_page(self, address: str, page: int, offset: int) -> str:
        """
        Raw JSON text of one transaction page

        Raises:
            ApiError: non-retryable HTTP status, or retries exhausted
            CircuitOpenError: too many consecutive failures
        """
        params = self._params(address, page, offset)
        delays = self.timeouts.backoff_delays()
        last_error: Optional[Exception] = None
        for attempt in range(self.timeouts.retry_attempts):
            self.rate_limiter.acquire()
            try:
                return self.circuit_breaker.call(self._get, params)
            except CircuitOpenError:
                raise
            except TransientApiError as e:
                last_error = e
                logger.warning(
                    f"Fetch {address} page {page} failed (attempt {attempt + 1}/"
                    f"{self.timeouts.retry_attempts}): {e}"
                )
            if attempt < len(delays):
                self._sleep(delays[attempt])
        raise ApiError(
            f"giving up on {address} page {page} after {self.timeouts.retry_attempts} attempts: {last_error}"
        )


class FixtureClient:
    """
    Serves recorded pages from `<fixture_dir>/<address>_<page>.json`

    A missing file answers like the API does for an exhausted account.
    """

    def __init__(self, fixture_dir: str):
        if not os.path.isdir(fixture_dir):
            raise ArtifactIOError(f"fixture directory not found: {fixture_dir}")
        self.fixture_dir = fixture_dir
        self.requests: List[Tuple[str, int]] = []
        self._lock = threading.Lock()

    def fetch_page(self, address: str, page: int, offset: int) -> str:
        with self._lock:
            self.requests.append((address, page))
        path = os.path.join(self.fixture_dir, f"{address.lower()}_{page}.json")
        if not os.path.exists(path):
            return EMPTY_PAGE
        try:
            with open(path, "r", encoding="utf-8") as f:
                return f.read()
        except OSError as e:
            raise ArtifactIOError(f"cannot read fixture {path}: {e}") from e
