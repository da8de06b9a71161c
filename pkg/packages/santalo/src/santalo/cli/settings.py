"""Run settings for the command line.

Values are resolved in the order flags > config file > environment > defaults.
Environment variables use the ``SANTALO_`` prefix and ``__`` for nesting, e.g.
``SANTALO_OUTPUT_DIR`` or ``SANTALO_FLOW__RADIAL_STEP``. The config file holds
``key = value`` lines with ``#`` comments; keys are flag names with ``-`` or
``_`` and nested keys use ``__``.
"""

from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic_settings import SettingsConfigDict

from santalo.commons.config.base import BaseSettings
from santalo.commons.config.telemetry import TelemetryConfig
from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.extremizer.search import SearchConfig
from santalo.flow.semigroup import FlowSettings
from santalo.infconv.checks import ComparisonSettings
from santalo.transforms.checks import TransformSettings

FAST_DIVISOR = 8
DEFAULT_FLOW_TIMES = (0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0)


class RunSettings(BaseSettings):
    """Everything a command reads, one field per flag."""

    model_config = SettingsConfigDict(env_prefix="SANTALO_")

    output_dir: Path = Path("santalo-out")
    seed: int = Field(default=0, ge=0)
    fast: bool = False
    workers: int = Field(default=1, ge=1)
    svg_timestamp: bool = True

    # Per-command knobs
    n: int = Field(default=1, ge=1, le=3)
    t: float | None = Field(default=None, gt=0)
    lambda_grid: int = Field(default=64, ge=1)
    instances: int | None = Field(default=None, ge=1)
    profile: Literal["gaussian", "linear", "random"] = "random"
    transform: Literal["legendre", "polar", "t"] = "legendre"
    times: list[float] = Field(default_factory=lambda: list(DEFAULT_FLOW_TIMES))
    budget: int | None = Field(default=None, ge=1)
    restarts: int | None = Field(default=None, ge=1)

    telemetry: TelemetryConfig = TelemetryConfig()
    flow: FlowSettings = FlowSettings()
    search: SearchConfig = SearchConfig()
    comparison: ComparisonSettings = ComparisonSettings()
    transforms: TransformSettings = TransformSettings()

    @field_validator("times", mode="before")
    @classmethod
    def _split_times(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [float(part) for part in value.replace(" ", "").split(",") if part]
        return value

    def scaled(self, count: int) -> int:
        """An instance budget, divided by 8 under ``--fast``."""
        return max(1, count // FAST_DIVISOR) if self.fast else count

    def resolved(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


def _nest(flat: dict[str, Any]) -> dict[str, Any]:
    nested: dict[str, Any] = {}
    for key, value in flat.items():
        parts = key.split("__")
        target = nested
        for part in parts[:-1]:
            target = target.setdefault(part, {})
        target[parts[-1]] = value
    return nested


def _merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def read_config_file(path: Path) -> dict[str, Any]:
    """Parse ``key = value`` lines into a nested dict of strings.

    Raises:
        SantaloError: ``config_error`` for unreadable files or lines without ``=``.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SantaloError(
            code=ErrorCode.CONFIG_ERROR,
            message=f"cannot read config file: {exc}",
            details={"path": str(path)},
        ) from exc
    flat: dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SantaloError(
                code=ErrorCode.CONFIG_ERROR,
                message=f"line {number}: expected 'key = value'",
                details={"path": str(path), "line": number},
            )
        key, value = (part.strip() for part in line.split("=", 1))
        flat[key.replace("-", "_").lower()] = value
    return _nest(flat)


def _reject_unknown_keys(values: dict[str, Any], model: type[BaseModel], path: Path, prefix: str = "") -> None:
    for key, value in values.items():
        field = model.model_fields.get(key)
        nested = field.annotation if field is not None else None
        if field is None or (
            isinstance(value, dict) and not (isinstance(nested, type) and issubclass(nested, BaseModel))
        ):
            raise SantaloError(
                code=ErrorCode.CONFIG_ERROR,
                message=f"unknown config key '{prefix}{key}'",
                details={"path": str(path), "key": f"{prefix}{key}"},
            )
        if isinstance(value, dict) and isinstance(nested, type):
            _reject_unknown_keys(value, nested, path, f"{prefix}{key}__")


def load_settings(flags: dict[str, Any], config_file: Path | None = None) -> RunSettings:
    """Resolve flags, the optional config file and the environment into settings.

    Raises:
        SantaloError: ``config_error`` naming the first offending field or an unknown
            config-file key.
    """
    file_values: dict[str, Any] = {}
    if config_file is not None:
        file_values = read_config_file(config_file)
        _reject_unknown_keys(file_values, RunSettings, config_file)
    values = _merge(file_values, _nest({k: v for k, v in flags.items() if v is not None}))
    try:
        return RunSettings.from_env(**values)
    except ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise SantaloError(
            code=ErrorCode.CONFIG_ERROR,
            message=f"invalid value for '{field}': {first['msg']}",
            details={"field": field, "errors": exc.error_count()},
        ) from exc
