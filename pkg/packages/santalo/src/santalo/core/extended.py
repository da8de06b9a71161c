"""Extended-real helpers: +∞ as the absorbing value, NaN as an error."""

from typing import Any

import numpy as np

from santalo.commons.schema.errors import ErrorCode, SantaloError

POS_INF = float("inf")
NEG_INF = float("-inf")


def require_no_nan(values: np.ndarray, what: str = "values") -> np.ndarray:
    """Raise ``nan_result`` if any entry of ``values`` is NaN."""
    if np.isnan(values).any():
        raise SantaloError(
            code=ErrorCode.NAN_RESULT,
            message=f"{what} contain NaN",
            details={"count": int(np.isnan(values).sum())},
        )
    return values


def as_extended(values: Any, *, allow_negative_infinity: bool = False, what: str = "values") -> np.ndarray:
    """Coerce ``values`` to a float array of extended reals.

    +∞ is always accepted. −∞ is accepted only when the caller's contract allows it.
    """
    array = np.asarray(values, dtype=float)
    require_no_nan(array, what)
    if not allow_negative_infinity and np.isneginf(array).any():
        raise SantaloError(
            code=ErrorCode.VALIDATION_ERROR,
            message=f"{what} contain -inf, which this operation does not accept",
        )
    return array


def extended_add(a: np.ndarray | float, b: np.ndarray | float) -> np.ndarray:
    """Sum where +∞ absorbs finite values; +∞ + (−∞) is an error."""
    with np.errstate(invalid="ignore"):
        total = np.add(a, b)
    return require_no_nan(np.asarray(total, dtype=float), "extended sum")


def extended_min(values: np.ndarray) -> float:
    """Minimum of an extended-real array; +∞ when every entry is +∞."""
    array = np.asarray(values, dtype=float)
    if array.size == 0:
        return POS_INF
    return float(np.min(array))


def encode_extended(value: float) -> float | str:
    """JSON-friendly encoding: infinities become the strings ``"inf"`` / ``"-inf"``."""
    if value == POS_INF:
        return "inf"
    if value == NEG_INF:
        return "-inf"
    return float(value)


def decode_extended(value: float | int | str) -> float:
    """Inverse of :func:`encode_extended`."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "+inf", "infinity"):
            return POS_INF
        if text in ("-inf", "-infinity"):
            return NEG_INF
        raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message=f"unrecognized extended value {value!r}")
    return float(value)
