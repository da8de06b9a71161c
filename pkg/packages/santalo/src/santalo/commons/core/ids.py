"""Run and instance identifiers."""

import secrets
from datetime import UTC, datetime


def new_id() -> str:
    """``run-YYYYmmddTHHMMSS-xxxxxxxx``: sorts by start time, unique per invocation."""
    return f"run-{datetime.now(UTC):%Y%m%dT%H%M%S}-{secrets.token_hex(4)}"


def instance_id(seed: int, index: int) -> str:
    """Deterministic label of the ``index``-th instance drawn under ``seed``."""
    return f"s{seed:08d}-i{index:05d}"
