"""
parallel.py – ordered thread-pool fan-out.
Results are returned in input order, so callers stay bitwise deterministic no
matter how the pool schedules the work. numpy releases the GIL in the heavy
kernels, which is what makes threads worthwhile here.
"""
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

import psutil

from .config import THREADS_ENV

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(requested: Optional[int] = None) -> int:
    """
    Resolve the worker count.

    Args:
        requested (Optional[int]): Explicit cap; None reads DICKE_GMC_THREADS.
            0 means auto (physical cores, falling back to logical cores).

    Returns:
        int: Number of workers, at least 1.
    """
    if requested is None:
        try:
            requested = int(os.getenv(THREADS_ENV, "0") or 0)
        except ValueError:
            requested = 0
    if requested > 0:
        return requested
    cores = psutil.cpu_count(logical=False) or psutil.cpu_count(logical=True) or 1
    return max(1, int(cores))


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """
    Map fn over items with a thread pool, preserving order.

    Args:
        fn (Callable): Pure function of one item.
        items (Iterable): Work items.
        threads (Optional[int]): Worker cap, see resolve_threads.

    Returns:
        List: fn(item) for each item, in input order.
    """
    items = list(items)
    workers = min(resolve_threads(threads), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
