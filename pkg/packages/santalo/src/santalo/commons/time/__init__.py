"""Time and timing utilities."""

from santalo.commons.time.utils import format_iso8601, now_utc, stopwatch

__all__ = [
    "now_utc",
    "format_iso8601",
    "stopwatch",
]
