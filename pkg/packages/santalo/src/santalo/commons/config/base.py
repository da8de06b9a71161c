"""Environment-backed settings base."""

from typing import Any, Self

from pydantic_settings import BaseSettings as PydanticBaseSettings
from pydantic_settings import PydanticBaseSettingsSource, SettingsConfigDict


class BaseSettings(PydanticBaseSettings):
    """Settings read from keyword overrides, the environment and ``.env``, in that order.

    Nested knob blocks (flow, search, telemetry) are addressed with ``__``, so
    ``SANTALO_FLOW__RADIAL_STEP`` sets ``flow.radial_step`` once a subclass adds
    the ``SANTALO_`` prefix.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",
        extra="ignore",
        case_sensitive=False,
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[PydanticBaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # no secrets directory: runs are configured by flags, files and env only
        return init_settings, env_settings, dotenv_settings

    @classmethod
    def from_env(cls, **overrides: Any) -> Self:
        """Settings from the environment with ``overrides`` on top; ``None`` overrides are dropped."""
        return cls(**{key: value for key, value in overrides.items() if value is not None})
