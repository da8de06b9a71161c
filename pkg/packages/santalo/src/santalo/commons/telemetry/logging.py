"""Log setup for runs and checks.

Messages follow ``event_name key=value`` so that both formats stay greppable.
The run id, the current check and the instance seed are taken from context
variables and attached to every record.
"""

import json
import logging
import sys
from datetime import UTC, datetime
from typing import Any

import numpy as np

from santalo.commons.config.telemetry import TelemetryConfig
from santalo.commons.telemetry.context import get_context_dict

# libraries whose DEBUG output drowns the check log
_QUIET = ("matplotlib", "PIL", "py.warnings")


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


class StructuredFormatter(logging.Formatter):
    """One JSON object per record: ts, level, logger, msg, service and the run context."""

    def __init__(self, service_name: str | None = None) -> None:
        super().__init__()
        self.service_name = service_name

    def format(self, record: logging.LogRecord) -> str:
        entry: dict[str, Any] = {
            "ts": datetime.fromtimestamp(record.created, UTC).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "msg": record.getMessage(),
        }
        if self.service_name:
            entry["service"] = self.service_name
        entry.update(get_context_dict())
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, default=_json_default)


class HumanReadableFormatter(logging.Formatter):
    """``time level logger message [run=… check=… seed=…]`` for terminals."""

    def __init__(self, service_name: str | None = None) -> None:
        super().__init__(fmt="%(asctime)s %(levelname)-7s %(name)s: %(message)s", datefmt="%H:%M:%S")
        self.service_name = service_name

    def format(self, record: logging.LogRecord) -> str:
        line = super().format(record)
        context = get_context_dict()
        if not context:
            return line
        return f"{line} [{' '.join(f'{key}={value}' for key, value in context.items())}]"


_configured = False


def configure_logging(config: TelemetryConfig) -> None:
    """Install one stderr handler on the root logger; later calls are ignored.

    Stdout is left alone so that shell pipelines over a run see only artifacts.
    """
    global _configured
    if _configured:
        return

    root = logging.getLogger()
    root.setLevel(config.log_level)
    for existing in root.handlers[:]:
        root.removeHandler(existing)

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(config.log_level)
    if config.structured_logging:
        handler.setFormatter(StructuredFormatter(service_name=config.service_name))
    else:
        handler.setFormatter(HumanReadableFormatter(service_name=config.service_name))
    root.addHandler(handler)

    logging.captureWarnings(config.capture_warnings)
    for name in _QUIET:
        logging.getLogger(name).setLevel(max(logging.WARNING, root.level))

    _configured = True


def get_logger(name: str | None = None) -> logging.Logger:
    return logging.getLogger(name)


def reset_logging_config() -> None:
    """Allow ``configure_logging`` to run again (tests reconfigure per case)."""
    global _configured
    _configured = False
    logging.captureWarnings(False)
