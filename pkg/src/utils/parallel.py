"""Process-pool fan-out for independent, seeded work items."""

from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import Any, TypeVar

from src.utils.logging import get_logger

T = TypeVar("T")

logger = get_logger("parallel")


def run_parallel(fn: Callable[..., T], items: Sequence[Any] | Iterable[Any], workers: int = 1) -> list[T]:
    """Apply ``fn`` to every item and return results in item order.

    Each item must carry everything ``fn`` needs (including its seed keys), so
    serial and parallel runs produce identical results. ``fn`` must be a
    module-level function when ``workers > 1``.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    logger.debug(f"Fanning out {len(items)} items over {workers} processes")
    chunksize = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
