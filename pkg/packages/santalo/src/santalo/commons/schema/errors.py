"""The error taxonomy of numerical operations, checks and run configuration."""

from enum import Enum
from typing import Any

from santalo.commons.schema.base import BaseSchema


class ErrorCode(str, Enum):
    # rejected input
    VALIDATION_ERROR = "validation_error"
    DIMENSION_MISMATCH = "dimension_mismatch"
    EMPTY_DOMAIN = "empty_domain"
    PRECONDITION_FAILED = "precondition_failed"
    UNSUPPORTED_PAIR = "unsupported_pair"
    CONFIG_ERROR = "config_error"

    # numerics went wrong
    NAN_RESULT = "nan_result"
    CONVEXITY_FLOOR = "convexity_floor"
    INVARIANT_BREACH = "invariant_breach"
    INTERNAL_ERROR = "internal_error"


class ErrorPayload(BaseSchema):
    """The ``error`` entry of a run manifest."""

    code: ErrorCode
    message: str
    details: dict[str, Any] | None = None
    run_id: str | None = None


class SantaloError(Exception):
    """Raised by every operation whose input or numerics break its contract.

    ``details`` carries what a reader of the manifest needs to reproduce the
    failure: the offending field or config line, a time and radius, a grid shape.
    """

    def __init__(self, code: ErrorCode, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.code = code
        self.message = message
        self.details = details

    @property
    def is_usage_error(self) -> bool:
        """True for bad run configuration, which the CLI reports with exit status 2."""
        return self.code is ErrorCode.CONFIG_ERROR

    def to_payload(self, run_id: str | None = None) -> ErrorPayload:
        return ErrorPayload(code=self.code, message=self.message, details=self.details, run_id=run_id)

    def __repr__(self) -> str:
        return f"SantaloError(code={self.code.value!r}, message={self.message!r})"
