"""Tests for the commons layer: errors, ids, context, fan-out, timings and logging."""

import json
import logging
import time
from datetime import UTC, datetime

import numpy as np
import pytest
from pydantic import ValidationError

from santalo.commons import (
    ErrorCode,
    SantaloError,
    TelemetryConfig,
    clear_context,
    format_iso8601,
    get_context_dict,
    get_run_id,
    instance_id,
    map_ordered,
    new_run_id,
    set_check_name,
    set_seed,
    start_span,
    stopwatch,
)
from santalo.commons.telemetry.context import get_check_name, get_seed
from santalo.commons.telemetry.logging import HumanReadableFormatter, StructuredFormatter
from santalo.commons.telemetry.tracing import record_verdict


def _record(message: str) -> logging.LogRecord:
    return logging.LogRecord("santalo.test", logging.INFO, __file__, 1, message, None, None)


def test_error_payload_carries_code_details_and_run_id():
    error = SantaloError(
        code=ErrorCode.DIMENSION_MISMATCH,
        message="measure dimension does not match grid",
        details={"grid": 2, "measure": 1},
    )
    payload = error.to_payload("run-1")
    assert payload.code is ErrorCode.DIMENSION_MISMATCH
    assert payload.details == {"grid": 2, "measure": 1}
    assert payload.run_id == "run-1"
    assert payload.model_dump(mode="json")["code"] == "dimension_mismatch"
    assert str(error) == "measure dimension does not match grid"
    assert "dimension_mismatch" in repr(error)


def test_error_codes_are_stable_strings():
    assert ErrorCode("convexity_floor") is ErrorCode.CONVEXITY_FLOOR
    assert {code.value for code in ErrorCode} >= {
        "validation_error",
        "unsupported_pair",
        "config_error",
        "nan_result",
        "invariant_breach",
    }


def test_instance_id_is_deterministic():
    assert instance_id(3, 7) == "s00000003-i00007"
    assert instance_id(3, 7) == instance_id(3, 7)


def test_context_round_trip():
    rid = new_run_id()
    set_check_name("layer_cake")
    set_seed(42)
    assert get_run_id() == rid
    assert get_context_dict() == {"run_id": rid, "check": "layer_cake", "seed": 42}
    clear_context()
    assert get_context_dict() == {}


def test_map_ordered_keeps_input_order_under_threads():
    def slow_square(x: int) -> int:
        time.sleep(0.001 * (10 - x % 10))
        return x * x

    assert map_ordered(slow_square, range(30), workers=4) == [x * x for x in range(30)]
    assert map_ordered(slow_square, [], workers=4) == []


def test_map_ordered_propagates_context_to_workers():
    set_check_name("comparison")
    assert map_ordered(lambda _: get_check_name(), range(6), workers=3) == ["comparison"] * 6


def test_map_ordered_worker_seed_does_not_leak():
    def tag(seed: int) -> int | None:
        set_seed(seed)
        return get_seed()

    assert map_ordered(tag, [5, 6, 7], workers=2) == [5, 6, 7]
    assert get_seed() is None


def test_map_ordered_reraises_first_failure():
    def explode(x: int) -> int:
        if x == 3:
            raise ValueError("bad instance")
        return x

    with pytest.raises(ValueError, match="bad instance"):
        map_ordered(explode, range(8), workers=4)


def test_stopwatch_records_even_on_failure():
    timings: dict[str, float] = {}
    with pytest.raises(RuntimeError):
        with stopwatch(timings, "check"):
            raise RuntimeError("boom")
    assert timings["check"] >= 0.0


def test_format_iso8601_uses_z_suffix():
    stamp = datetime(2026, 1, 2, 3, 4, 5, tzinfo=UTC)
    assert format_iso8601(stamp) == "2026-01-02T03:04:05Z"


def test_start_span_is_a_no_op_without_a_tracer():
    with start_span("check.layer_cake", {"seed": 1}) as span:
        assert span is None


def test_structured_formatter_includes_context():
    new_run_id()
    set_check_name("santalo_flow")
    line = json.loads(StructuredFormatter(service_name="santalo").format(_record("flow_trace n=1")))
    assert line["msg"] == "flow_trace n=1"
    assert line["check"] == "santalo_flow"
    assert line["service"] == "santalo"
    assert "run_id" in line


def test_human_formatter_appends_context():
    set_seed(9)
    text = HumanReadableFormatter().format(_record("check_done"))
    assert "check_done" in text
    assert "seed=9" in text


def test_telemetry_defaults():
    config = TelemetryConfig()
    assert config.log_level == "INFO"
    assert config.structured_logging is False
    assert config.otel_enabled is False


def test_log_level_is_normalized():
    assert TelemetryConfig(log_level=" debug ").log_level == "DEBUG"
    with pytest.raises(ValidationError):
        TelemetryConfig(log_level="chatty")


def test_record_verdict_is_a_no_op_without_a_tracer():
    with start_span("check.santalo_set", {"seed": np.int64(3), "skipped": None}):
        record_verdict(True, rows=np.int64(4))


def test_structured_formatter_serializes_numpy_values():
    record = _record("level_done")
    set_seed(np.int64(4))
    line = json.loads(StructuredFormatter().format(record))
    assert line["seed"] == 4
    assert "service" not in line
