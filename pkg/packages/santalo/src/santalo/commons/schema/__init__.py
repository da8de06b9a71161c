"""Schema base classes and error types."""

from santalo.commons.schema.base import BaseSchema
from santalo.commons.schema.errors import ErrorCode, ErrorPayload, SantaloError

__all__ = [
    "BaseSchema",
    "ErrorCode",
    "ErrorPayload",
    "SantaloError",
]
