"""Monotone one-dimensional maps given by tables (ρ and α of the cost families)."""

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from santalo.commons.schema.errors import ErrorCode, SantaloError


@dataclass(frozen=True, eq=False)
class MonotoneMap:
    """Nondecreasing piecewise-linear map through ``(xs, ys)``, extrapolated linearly.

    Outside the table the end segments continue with their own slopes.
    """

    xs: np.ndarray
    ys: np.ndarray
    name: str = "table"

    def __post_init__(self) -> None:
        xs = np.asarray(self.xs, dtype=float).ravel().copy()
        ys = np.asarray(self.ys, dtype=float).ravel().copy()
        if xs.size < 2 or xs.size != ys.size:
            raise SantaloError(
                code=ErrorCode.VALIDATION_ERROR,
                message="monotone map needs at least two matching table entries",
            )
        if not (np.isfinite(xs).all() and np.isfinite(ys).all()):
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="monotone map table must be finite")
        if np.any(np.diff(xs) <= 0):
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="map abscissae must be increasing")
        if np.any(np.diff(ys) < 0):
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="map values must be nondecreasing")
        xs.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @classmethod
    def identity(cls) -> "MonotoneMap":
        return cls(np.array([0.0, 1.0]), np.array([0.0, 1.0]), name="identity")

    @classmethod
    def linear(cls, slope: float) -> "MonotoneMap":
        return cls(np.array([0.0, 1.0]), np.array([0.0, slope]), name=f"linear({slope:g})")

    @classmethod
    def from_callable(
        cls,
        fn: Callable[[np.ndarray], np.ndarray],
        xs: Sequence[float] | np.ndarray,
        name: str = "sampled",
    ) -> "MonotoneMap":
        grid = np.asarray(xs, dtype=float)
        return cls(grid, np.asarray(fn(grid), dtype=float), name=name)

    @property
    def is_identity(self) -> bool:
        slopes = np.diff(self.ys) / np.diff(self.xs)
        intercept = self.ys[0] - slopes[0] * self.xs[0]
        return bool(np.allclose(slopes, 1.0, rtol=0, atol=1e-15) and abs(intercept) <= 1e-15)

    @property
    def is_strictly_increasing(self) -> bool:
        return bool(np.all(np.diff(self.ys) > 0))

    def _end_slopes(self) -> tuple[float, float]:
        first = (self.ys[1] - self.ys[0]) / (self.xs[1] - self.xs[0])
        last = (self.ys[-1] - self.ys[-2]) / (self.xs[-1] - self.xs[-2])
        return float(first), float(last)

    def __call__(self, x: np.ndarray | float) -> np.ndarray:
        values = np.asarray(x, dtype=float)
        first, last = self._end_slopes()
        inside = np.interp(values, self.xs, self.ys)
        with np.errstate(invalid="ignore"):
            below = self.ys[0] + first * (values - self.xs[0])
            above = self.ys[-1] + last * (values - self.xs[-1])
        # flat tails keep infinite arguments finite
        below = np.where(np.isnan(below), self.ys[0], below)
        above = np.where(np.isnan(above), self.ys[-1], above)
        return np.where(values < self.xs[0], below, np.where(values > self.xs[-1], above, inside))

    def generalized_inverse(self, eps: float) -> float:
        """ρ⁻¹(ε) = inf{y : ρ(y) ≥ ε}.

        Raises:
            SantaloError: When the level is never reached.
        """
        first, last = self._end_slopes()
        if eps <= self.ys[0]:
            if first <= 0:
                return -np.inf
            return float(self.xs[0] + (eps - self.ys[0]) / first)
        if eps > self.ys[-1]:
            if last <= 0:
                raise SantaloError(
                    code=ErrorCode.PRECONDITION_FAILED,
                    message="level is never reached by the monotone map",
                    details={"eps": eps},
                )
            return float(self.xs[-1] + (eps - self.ys[-1]) / last)
        k = int(np.argmax(self.ys >= eps))
        y0, y1 = self.ys[k - 1], self.ys[k]
        x0, x1 = self.xs[k - 1], self.xs[k]
        return float(x0 + (eps - y0) * (x1 - x0) / (y1 - y0))
