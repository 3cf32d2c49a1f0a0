"""Ordered fan-out of independent trials."""

from collections.abc import Callable
from typing import TypeVar

from src.utils.parallel import run_parallel

T = TypeVar("T")


def run_trials(fn: Callable[[int], T], count: int, workers: int = 1) -> list[T]:
    """Run ``fn(0) .. fn(count-1)`` and return the results in trial order.

    ``fn`` derives its randomness from the trial index alone, so the result
    does not depend on ``workers``.
    """
    return run_parallel(fn, range(count), workers=workers)
