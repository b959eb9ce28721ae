# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

Timing and caching utilities for sweeps and certificate fits.
"""

import functools
import time
from contextlib import contextmanager
from typing import Callable

from cachetools import LRUCache

from magtm.config import Config
from magtm.core import log


class PerformanceMonitor:
    """Track sweep durations and cache effectiveness."""

    def __init__(self):
        self.metrics = {"runs": [], "cache_hits": 0, "cache_misses": 0}

    def _calculate_cache_hit_rate(self) -> float:
        total = self.metrics["cache_hits"] + self.metrics["cache_misses"]
        if total == 0:
            return 0.0
        return (self.metrics["cache_hits"] / total) * 100

    def record(self, name: str, duration: float):
        """Record one timed block."""
        self.metrics["runs"].append({"name": name, "duration": duration})

    def reset(self):
        self.metrics = {"runs": [], "cache_hits": 0, "cache_misses": 0}

    def get_stats(self) -> dict:
        """Summary statistics over recorded durations."""
        if not self.metrics["runs"]:
            return {"message": "No runs recorded."}

        durations = sorted(r["duration"] for r in self.metrics["runs"])
        n = len(durations)

        return {
            "total_runs": n,
            "average_time": sum(durations) / n,
            "min_time": durations[0],
            "max_time": durations[-1],
            "cache_hit_rate": self._calculate_cache_hit_rate(),
            "p50": durations[int(n * 0.5)],
            "p90": durations[min(int(n * 0.9), n - 1)],
        }


# Global performance monitor instance
perf_monitor = PerformanceMonitor()


def timeit(func: Callable) -> Callable:
    """Decorator to measure function execution time."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        duration = time.perf_counter() - start_time

        perf_monitor.record(func.__name__, duration)
        log.debug(f"{func.__name__} took {duration:.4f}s")

        return result

    return wrapper


@contextmanager
def timer(name: str = "Operation"):
    """Context manager for timing blocks."""
    start_time = time.perf_counter()
    try:
        yield
    finally:
        duration = time.perf_counter() - start_time
        perf_monitor.record(name, duration)
        log.info(f"{name} took {duration:.4f}s")


# LRU cache for deterministic fits keyed on frozen parameter records
function_cache = LRUCache(maxsize=Config.CACHE_SIZE)


def cached(cache_obj=None, key_func=None):
    """Decorator for caching function results."""
    if cache_obj is None:
        cache_obj = function_cache

    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            if key_func:
                cache_key = key_func(*args, **kwargs)
            else:
                # Function path in the key keeps decorated functions from colliding
                func_path = f"{func.__module__}.{func.__name__}"
                cache_key = (func_path, args, tuple(sorted(kwargs.items())))

            if cache_key in cache_obj:
                perf_monitor.metrics["cache_hits"] += 1
                log.debug(f"Cache HIT: {func.__name__}")
                return cache_obj[cache_key]

            perf_monitor.metrics["cache_misses"] += 1
            log.debug(f"Cache MISS: {func.__name__}")
            result = func(*args, **kwargs)
            cache_obj[cache_key] = result

            return result

        wrapper.cache_clear = lambda: cache_obj.clear()
        wrapper.cache_info = lambda: {"size": len(cache_obj), "maxsize": cache_obj.maxsize}

        return wrapper

    return decorator


__all__ = [
    "PerformanceMonitor",
    "perf_monitor",
    "timeit",
    "timer",
    "cached",
    "function_cache",
]
