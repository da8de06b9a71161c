"""santalo commons - shared foundation for every santalo module.

This package provides cross-cutting utilities:

- ID generation
- Base Pydantic models and error contracts
- Configuration patterns
- Logging and tracing
- Time and timing utilities
- Ordered fan-out over independent instances

Example:
    from santalo.commons import (
        BaseSchema,
        ErrorCode,
        SantaloError,
        get_logger,
        new_id,
    )
"""

# Config
from santalo.commons.config.base import BaseSettings
from santalo.commons.config.telemetry import TelemetryConfig

# Core
from santalo.commons.core.ids import instance_id, new_id

# Infra
from santalo.commons.infra.tasks import map_ordered

# Schema
from santalo.commons.schema.base import BaseSchema
from santalo.commons.schema.errors import ErrorCode, ErrorPayload, SantaloError

# Telemetry
from santalo.commons.telemetry.context import (
    clear_context,
    get_context_dict,
    get_run_id,
    new_run_id,
    set_check_name,
    set_run_id,
    set_seed,
)
from santalo.commons.telemetry.logging import configure_logging, get_logger
from santalo.commons.telemetry.tracing import start_span

# Time
from santalo.commons.time.utils import format_iso8601, now_utc, stopwatch

__all__ = [
    # Core
    "new_id",
    "instance_id",
    # Schema
    "BaseSchema",
    "ErrorCode",
    "ErrorPayload",
    "SantaloError",
    # Config
    "BaseSettings",
    "TelemetryConfig",
    # Telemetry
    "configure_logging",
    "get_logger",
    "start_span",
    "set_run_id",
    "get_run_id",
    "new_run_id",
    "set_check_name",
    "set_seed",
    "get_context_dict",
    "clear_context",
    # Time
    "now_utc",
    "format_iso8601",
    "stopwatch",
    # Infra
    "map_ordered",
]
