"""Spans around verification checks.

OpenTelemetry is an optional extra. Without it, or before ``init_tracer`` runs,
``start_span`` yields ``None`` and the other helpers do nothing.
"""

from collections.abc import Iterator, Mapping
from contextlib import contextmanager
from typing import Any

from santalo.commons.schema.errors import SantaloError

try:
    from opentelemetry import trace
except ImportError:
    trace = None  # type: ignore[assignment]

ATTRIBUTE_PREFIX = "santalo."

_tracer: Any | None = None


def init_tracer(service_name: str) -> None:
    global _tracer
    if trace is not None:
        _tracer = trace.get_tracer(service_name)


def _attributes(attributes: Mapping[str, Any] | None) -> dict[str, Any]:
    # span attributes must be str, bool, int or float
    out: dict[str, Any] = {}
    for key, value in (attributes or {}).items():
        if value is None:
            continue
        if not isinstance(value, str | bool | int | float):
            value = value.item() if hasattr(value, "item") else str(value)
        out[f"{ATTRIBUTE_PREFIX}{key}"] = value
    return out


@contextmanager
def start_span(name: str, attributes: Mapping[str, Any] | None = None) -> Iterator[Any]:
    """Span named ``name`` (e.g. ``check.hopf_lax_comparison``) with prefixed attributes.

    A ``SantaloError`` escaping the block is recorded with its error code before
    it propagates.
    """
    if _tracer is None:
        yield None
        return
    with _tracer.start_as_current_span(name, attributes=_attributes(attributes)) as span:
        try:
            yield span
        except SantaloError as exc:
            span.set_attribute(f"{ATTRIBUTE_PREFIX}error_code", exc.code.value)
            span.record_exception(exc)
            raise


def record_verdict(verdict: bool, **attributes: Any) -> None:
    """Attach a check verdict and summary scalars to the current span."""
    if _tracer is None or trace is None:
        return
    span = trace.get_current_span()
    for key, value in _attributes({"verdict": verdict, **attributes}).items():
        span.set_attribute(key, value)
