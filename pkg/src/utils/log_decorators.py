"""
Logging Decorator for Stage Timing
"""

import functools
import logging
import time
from typing import Callable, Optional


def log_execution_time(
    logger: Optional[logging.Logger] = None,
    slow_threshold_ms: float = 60_000.0,
):
    """
    Log how long a pipeline stage took

    WARNING above `slow_threshold_ms`, DEBUG otherwise.

    Example:
        @log_execution_time(slow_threshold_ms=30_000)
        def generate_corpus(g, cfg):
            ...
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            log = logger or logging.getLogger(func.__module__)
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                elapsed_ms = (time.perf_counter() - start) * 1000
                fields = {"stage": func.__name__, "duration_ms": round(elapsed_ms, 2)}
                if elapsed_ms > slow_threshold_ms:
                    log.warning(
                        f"{func.__name__} slow: {elapsed_ms / 1000:.1f}s",
                        extra={**fields, "threshold_ms": slow_threshold_ms},
                    )
                else:
                    log.debug(f"{func.__name__} finished in {elapsed_ms:.1f}ms", extra=fields)

        return wrapper
    return decorator

