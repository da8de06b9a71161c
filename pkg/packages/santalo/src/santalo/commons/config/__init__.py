"""Settings base and the telemetry knob block."""

from santalo.commons.config.base import BaseSettings
from santalo.commons.config.telemetry import LogLevel, TelemetryConfig

__all__ = ["BaseSettings", "LogLevel", "TelemetryConfig"]
