"""Logging, tracing, and context utilities."""

from santalo.commons.telemetry.context import (
    check_name_var,
    clear_context,
    get_check_name,
    get_context_dict,
    get_run_id,
    get_seed,
    new_run_id,
    run_id_var,
    seed_var,
    set_check_name,
    set_run_id,
    set_seed,
)
from santalo.commons.telemetry.logging import (
    configure_logging,
    get_logger,
    reset_logging_config,
)
from santalo.commons.telemetry.tracing import init_tracer, record_verdict, start_span

__all__ = [
    # Context
    "run_id_var",
    "check_name_var",
    "seed_var",
    "set_run_id",
    "get_run_id",
    "new_run_id",
    "set_check_name",
    "get_check_name",
    "set_seed",
    "get_seed",
    "get_context_dict",
    "clear_context",
    # Logging
    "configure_logging",
    "get_logger",
    "reset_logging_config",
    # Tracing
    "init_tracer",
    "start_span",
    "record_verdict",
]
