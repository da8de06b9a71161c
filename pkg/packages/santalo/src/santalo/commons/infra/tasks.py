"""Fan-out helpers for independent instances."""

import contextvars
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor

from santalo.commons.telemetry.logging import get_logger

logger = get_logger(__name__)


def map_ordered[T, R](fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """Apply ``fn`` to every item, possibly concurrently, and return results in input order.

    Each call runs inside a copy of the caller's context so run IDs and check
    names reach log records emitted from worker threads. The first failure is
    logged and re-raised after pending work is cancelled.

    Args:
        fn: Pure function of one item.
        items: Work items; materialized before dispatch.
        workers: Thread count. 1 runs inline.

    Returns:
        ``[fn(item) for item in items]``.

    Example:
        reports = map_ordered(run_instance, range(500), workers=4)
    """
    work = list(items)
    if workers <= 1 or len(work) <= 1:
        return [fn(item) for item in work]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(contextvars.copy_context().run, fn, item) for item in work]
        results: list[R] = []
        for index, future in enumerate(futures):
            try:
                results.append(future.result())
            except Exception:
                logger.exception("fan_out_item_failed index=%s", index)
                for pending in futures[index + 1 :]:
                    pending.cancel()
                raise
        return results
