"""Fold scheduling shared by both engines."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from threadpoolctl import threadpool_limits

T = TypeVar("T")
R = TypeVar("R")


def map_folds(fn: Callable[[T], R], items: Iterable[T], n_jobs: int = 1) -> list[R]:
    """
    Apply ``fn`` to every item and return results in input order.

    BLAS is pinned to one thread for the duration, so each product is reduced
    in the same order no matter how many worker threads evaluate folds. With
    ``n_jobs > 1`` folds run on a thread pool; outputs are bit-identical to the
    sequential run.
    """
    if n_jobs < 1:
        raise ValueError(f"n_jobs must be >= 1, got {n_jobs}")
    with single_threaded_blas():
        if n_jobs == 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            return list(pool.map(fn, items))


def single_threaded_blas():
    """Context manager pinning BLAS to one thread so reductions have a fixed order."""
    return threadpool_limits(limits=1, user_api="blas")


def fold_ids(p: int) -> Sequence[int]:
    return range(1, p + 1)
