"""Run, check and seed context attached to log records.

The CLI opens a run id once per invocation. ``SuiteContext.run_check`` sets the
check name and each fanned-out instance sets its own seed; ``map_ordered``
copies the context into worker threads so the seed of one instance never
shows up on another's records.
"""

from contextvars import ContextVar
from typing import Any

from santalo.commons.core.ids import new_id

run_id_var: ContextVar[str | None] = ContextVar("run_id", default=None)
check_name_var: ContextVar[str | None] = ContextVar("check_name", default=None)
seed_var: ContextVar[int | None] = ContextVar("seed", default=None)


def set_run_id(value: str | None) -> None:
    run_id_var.set(value)


def get_run_id() -> str | None:
    return run_id_var.get()


def new_run_id() -> str:
    """Open a fresh run id in the current context and return it."""
    rid = new_id()
    run_id_var.set(rid)
    return rid


def set_check_name(value: str | None) -> None:
    check_name_var.set(value)


def get_check_name() -> str | None:
    return check_name_var.get()


def set_seed(value: int | None) -> None:
    seed_var.set(value)


def get_seed() -> int | None:
    return seed_var.get()


def get_context_dict() -> dict[str, Any]:
    """Non-empty context values under the keys ``run_id``, ``check`` and ``seed``."""
    values = {"run_id": run_id_var.get(), "check": check_name_var.get(), "seed": seed_var.get()}
    return {key: value for key, value in values.items() if value is not None}


def clear_context() -> None:
    for var in (run_id_var, check_name_var, seed_var):
        var.set(None)
