"""JSON documents for grid functions and profiles.

Infinite values are written as the strings ``"inf"`` and ``"-inf"`` so the
documents stay strict JSON.
"""

from typing import Annotated, Literal

import numpy as np
from pydantic import Field, TypeAdapter

from santalo.commons.schema.base import BaseSchema
from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.core.extended import decode_extended, encode_extended
from santalo.core.grid import Axis, GridFunction
from santalo.core.profile import ConvexProfile, QuadraticProfile

ExtendedNumber = float | str


class AxisDocument(BaseSchema):
    lo: float
    hi: float
    count: int = Field(ge=2)


class GridDocument(BaseSchema):
    """Grid function: per-axis domain and C-ordered flat values."""

    kind: Literal["grid"] = "grid"
    domain: list[AxisDocument]
    values: list[ExtendedNumber]
    allow_negative_infinity: bool = False


class ConvexProfileDocument(BaseSchema):
    kind: Literal["convex_profile"] = "convex_profile"
    knots: list[float]
    values: list[float]
    terminal_slope: ExtendedNumber


class QuadraticProfileDocument(BaseSchema):
    kind: Literal["quadratic_profile"] = "quadratic_profile"
    c: float


Document = Annotated[
    GridDocument | ConvexProfileDocument | QuadraticProfileDocument,
    Field(discriminator="kind"),
]

_document_adapter: TypeAdapter[GridDocument | ConvexProfileDocument | QuadraticProfileDocument] = TypeAdapter(
    Document
)

Carrier = GridFunction | ConvexProfile | QuadraticProfile


def to_document(obj: Carrier) -> GridDocument | ConvexProfileDocument | QuadraticProfileDocument:
    """Document model for a grid function or profile."""
    if isinstance(obj, GridFunction):
        return GridDocument(
            domain=[AxisDocument(lo=a.lo, hi=a.hi, count=a.count) for a in obj.axes],
            values=[encode_extended(v) for v in obj.values.ravel()],
            allow_negative_infinity=obj.allow_negative_infinity,
        )
    if isinstance(obj, ConvexProfile):
        return ConvexProfileDocument(
            knots=obj.knots.tolist(),
            values=obj.values.tolist(),
            terminal_slope=encode_extended(obj.terminal_slope),
        )
    if isinstance(obj, QuadraticProfile):
        return QuadraticProfileDocument(c=obj.c)
    raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message=f"cannot serialize {type(obj).__name__}")


def from_document(document: GridDocument | ConvexProfileDocument | QuadraticProfileDocument | dict | str) -> Carrier:
    """Rebuild a carrier from a document model, a mapping or a JSON string."""
    if isinstance(document, str):
        parsed = _document_adapter.validate_json(document)
    elif isinstance(document, dict):
        parsed = _document_adapter.validate_python(document)
    else:
        parsed = document

    if isinstance(parsed, GridDocument):
        axes = tuple(Axis(a.lo, a.hi, a.count) for a in parsed.domain)
        flat = np.array([decode_extended(v) for v in parsed.values], dtype=float)
        shape = tuple(a.count for a in axes)
        if flat.size != int(np.prod(shape)):
            raise SantaloError(
                code=ErrorCode.DIMENSION_MISMATCH,
                message="document value count does not match its domain",
                details={"values": flat.size, "shape": list(shape)},
            )
        return GridFunction(axes, flat.reshape(shape), allow_negative_infinity=parsed.allow_negative_infinity)
    if isinstance(parsed, ConvexProfileDocument):
        return ConvexProfile(
            np.asarray(parsed.knots),
            np.asarray(parsed.values),
            decode_extended(parsed.terminal_slope),
        )
    return QuadraticProfile(parsed.c)


def dumps(obj: Carrier) -> str:
    return to_document(obj).to_json()


def loads(text: str) -> Carrier:
    return from_document(text)
