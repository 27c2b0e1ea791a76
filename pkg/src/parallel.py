import concurrent.futures
import logging
import os
import sys
from multiprocessing.context import BaseContext
from typing import Callable, Iterable, Optional, TypeVar

from .logger import LIBRARY_LOGGER_NAME, configured_level, setup_logger

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def lift_int_str_limit() -> None:
    """Removes the int-to-str digit limit of Python 3.11+ for this process."""
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)


def _init_worker(log_level: Optional[str]) -> None:
    # spawn and forkserver workers start from a fresh interpreter
    lift_int_str_limit()
    if log_level is not None:
        setup_logger(LIBRARY_LOGGER_NAME, log_level)


def resolve_jobs(jobs: Optional[int]) -> int:
    """Worker count: the given value, or the machine's CPU count when None."""
    if jobs is None:
        return os.cpu_count() or 1
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    return jobs


def run_parallel(
    func: Callable[[T], R],
    items: Iterable[T],
    jobs: Optional[int] = 1,
    mp_context: Optional[BaseContext] = None,
) -> list[R]:
    """
    Applies func to every item, in a process pool when more than one worker is requested.

    Results come back in input order regardless of completion order. func must be
    picklable (a module-level function or a functools.partial of one). Every worker
    lifts the int-to-str digit limit and, when the library logger is configured here,
    logs at the same level.

    Args:
        func (Callable): The work function.
        items (Iterable): Independent work items.
        jobs (int | None): Worker count; 1 runs in-process, None uses every CPU.
        mp_context (BaseContext | None): Start method context; the platform default when None.

    Returns:
        list: func(item) for each item, in order.
    """
    work = list(items)
    workers = min(resolve_jobs(jobs), max(len(work), 1))
    if workers == 1:
        return [func(item) for item in work]
    logger.debug(f"Dispatching {len(work)} items to {workers} worker processes")
    with concurrent.futures.ProcessPoolExecutor(
        max_workers=workers,
        mp_context=mp_context,
        initializer=_init_worker,
        initargs=(configured_level(),),
    ) as executor:
        return list(executor.map(func, work, chunksize=1))
