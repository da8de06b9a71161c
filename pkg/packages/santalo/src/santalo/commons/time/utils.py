"""Clock helpers for manifests and check timings."""

import time
from collections.abc import Iterator
from contextlib import contextmanager
from datetime import UTC, datetime


def now_utc() -> datetime:
    return datetime.now(UTC)


def format_iso8601(dt: datetime) -> str:
    """Second-resolution ISO 8601; UTC is written with a ``Z`` suffix."""
    if dt.utcoffset() is not None and not dt.utcoffset():
        return f"{dt:%Y-%m-%dT%H:%M:%S}Z"
    return dt.isoformat(timespec="seconds")


@contextmanager
def stopwatch(timings: dict[str, float], name: str) -> Iterator[None]:
    """Store the wall-clock seconds of the block in ``timings[name]``, also when it raises."""
    start = time.perf_counter()
    try:
        yield
    finally:
        timings[name] = round(time.perf_counter() - start, 6)
