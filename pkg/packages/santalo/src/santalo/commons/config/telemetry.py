"""Logging and tracing knobs of a run."""

from typing import Any, Literal

from pydantic import field_validator

from santalo.commons.schema.base import BaseSchema

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR"]


class TelemetryConfig(BaseSchema):
    """Read by ``configure_logging`` and, when ``otel_enabled``, by ``init_tracer``.

    Structured logging writes one JSON object per record, which suits batch
    runs of ``verify-all`` whose logs are collected next to the artifacts.
    """

    log_level: LogLevel = "INFO"
    structured_logging: bool = False
    service_name: str = "santalo"
    otel_enabled: bool = False
    # numpy RuntimeWarnings (overflow in exp, empty slices) are routed to the log
    capture_warnings: bool = True

    @field_validator("log_level", mode="before")
    @classmethod
    def _upper(cls, value: Any) -> Any:
        return value.strip().upper() if isinstance(value, str) else value
