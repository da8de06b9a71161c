"""Uniform grids and grid-sampled extended-real functions.

A ``GridFunction`` is the universal function carrier: values on the tensor
product of 1 to 3 uniform axes, extended by +∞ outside the sampled box.
The one-dimensional carrier is simply a ``GridFunction`` with one axis.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.core.extended import as_extended

MAX_DIMENSION = 3


@dataclass(frozen=True)
class Axis:
    """One uniform axis: ``count`` nodes from ``lo`` to ``hi`` inclusive."""

    lo: float
    hi: float
    count: int

    def __post_init__(self) -> None:
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="axis bounds must be finite")
        if self.hi <= self.lo:
            raise SantaloError(
                code=ErrorCode.EMPTY_DOMAIN,
                message="axis has zero extent",
                details={"lo": self.lo, "hi": self.hi},
            )
        if self.count < 2:
            raise SantaloError(
                code=ErrorCode.VALIDATION_ERROR,
                message="axis needs at least two nodes",
                details={"count": self.count},
            )

    @classmethod
    def symmetric(cls, half_width: float, count: int) -> "Axis":
        return cls(-float(half_width), float(half_width), int(count))

    @classmethod
    def with_step(cls, lo: float, step: float, count: int) -> "Axis":
        """Axis starting at ``lo`` with spacing ``step``."""
        return cls(float(lo), float(lo + step * (count - 1)), int(count))

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.count - 1)

    @property
    def nodes(self) -> np.ndarray:
        nodes = np.linspace(self.lo, self.hi, self.count)
        if self.is_symmetric:
            # exact mirror symmetry, with an exact zero node for odd counts
            nodes = 0.5 * (nodes - nodes[::-1])
        return nodes

    @property
    def is_symmetric(self) -> bool:
        return abs(self.lo + self.hi) <= 1e-9 * (self.hi - self.lo)

    def node_index(self, value: float, tol: float = 1e-9) -> int | None:
        """Index of the node equal to ``value`` (within ``tol`` steps), else None."""
        position = (value - self.lo) / self.step
        index = round(position)
        if 0 <= index < self.count and abs(position - index) <= tol:
            return int(index)
        return None

    def padded(self, cells: int) -> "Axis":
        """Same spacing, ``cells`` extra nodes on each side."""
        step = self.step
        return Axis(self.lo - cells * step, self.hi + cells * step, self.count + 2 * cells)

    def scaled(self, factor: float) -> "Axis":
        return Axis(self.lo * factor, self.hi * factor, self.count)

    def recentered(self) -> "Axis":
        """Axis with the same spacing and count, symmetric about the origin."""
        half = 0.5 * (self.hi - self.lo)
        return Axis(-half, half, self.count)

    def refined(self, factor: int) -> "Axis":
        """Same extent, spacing divided by ``factor``."""
        return Axis(self.lo, self.hi, (self.count - 1) * factor + 1)


def as_axes(axes: Axis | Sequence[Axis], ndim: int | None = None) -> tuple[Axis, ...]:
    """Normalize a single axis (repeated ``ndim`` times) or a sequence of axes."""
    if isinstance(axes, Axis):
        result: tuple[Axis, ...] = (axes,) * (ndim or 1)
    else:
        result = tuple(axes)
    if not 1 <= len(result) <= MAX_DIMENSION:
        raise SantaloError(
            code=ErrorCode.VALIDATION_ERROR,
            message="grids support dimensions 1 to 3",
            details={"ndim": len(result)},
        )
    if ndim is not None and len(result) != ndim:
        raise SantaloError(
            code=ErrorCode.DIMENSION_MISMATCH,
            message="axis count does not match the requested dimension",
            details={"axes": len(result), "ndim": ndim},
        )
    return result


def mesh(axes: Sequence[Axis]) -> tuple[np.ndarray, ...]:
    """Coordinate arrays of the tensor grid (``indexing="ij"``)."""
    return tuple(np.meshgrid(*(axis.nodes for axis in axes), indexing="ij"))


def grid_points(axes: Sequence[Axis]) -> np.ndarray:
    """All nodes as an ``(N, n)`` array in C order."""
    return np.stack([coord.ravel() for coord in mesh(axes)], axis=1)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Extended-real function sampled on a uniform tensor grid, +∞ outside the box."""

    axes: tuple[Axis, ...]
    values: np.ndarray
    allow_negative_infinity: bool = field(default=False)

    def __post_init__(self) -> None:
        axes = as_axes(self.axes)
        values = as_extended(
            self.values,
            allow_negative_infinity=self.allow_negative_infinity,
            what="grid values",
        ).copy()
        expected = tuple(axis.count for axis in axes)
        if values.shape != expected:
            raise SantaloError(
                code=ErrorCode.DIMENSION_MISMATCH,
                message="values do not match the grid shape",
                details={"values": list(values.shape), "grid": list(expected)},
            )
        if not np.isfinite(values).any():
            raise SantaloError(code=ErrorCode.EMPTY_DOMAIN, message="grid function has no finite value")
        values.setflags(write=False)
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(
        cls,
        fn: Callable[..., np.ndarray],
        axes: Axis | Sequence[Axis],
        ndim: int | None = None,
    ) -> "GridFunction":
        """Sample ``fn(*coords)`` on the grid; coordinates are ``ij``-indexed arrays."""
        resolved = as_axes(axes, ndim)
        values = np.broadcast_to(np.asarray(fn(*mesh(resolved)), dtype=float), tuple(a.count for a in resolved))
        return cls(resolved, values)

    @classmethod
    def on_interval(cls, lo: float, hi: float, values: Sequence[float] | np.ndarray) -> "GridFunction":
        array = np.asarray(values, dtype=float)
        return cls((Axis(lo, hi, array.size),), array)

    @property
    def ndim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(axis.count for axis in self.axes)

    @property
    def steps(self) -> tuple[float, ...]:
        return tuple(axis.step for axis in self.axes)

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.steps))

    @cached_property
    def coordinates(self) -> tuple[np.ndarray, ...]:
        return mesh(self.axes)

    @cached_property
    def points(self) -> np.ndarray:
        return grid_points(self.axes)

    @property
    def finite_mask(self) -> np.ndarray:
        return np.isfinite(self.values)

    @property
    def finite_min(self) -> float:
        return float(self.values[self.finite_mask].min())

    @property
    def finite_max(self) -> float:
        return float(self.values[self.finite_mask].max())

    def with_values(self, values: np.ndarray, allow_negative_infinity: bool = False) -> "GridFunction":
        return GridFunction(self.axes, values, allow_negative_infinity=allow_negative_infinity)

    def origin_index(self) -> tuple[int, ...] | None:
        """Multi-index of the node at the origin, if the grid has one."""
        indices = tuple(axis.node_index(0.0) for axis in self.axes)
        if any(index is None for index in indices):
            return None
        return tuple(int(index) for index in indices)  # type: ignore[arg-type]

    def boundary_mask(self) -> np.ndarray:
        """Nodes on the faces of the sampled box."""
        mask = np.zeros(self.shape, dtype=bool)
        for axis_index in range(self.ndim):
            front = [slice(None)] * self.ndim
            back = [slice(None)] * self.ndim
            front[axis_index] = 0  # type: ignore[call-overload]
            back[axis_index] = -1  # type: ignore[call-overload]
            mask[tuple(front)] = True
            mask[tuple(back)] = True
        return mask

    def boundary_min(self) -> float:
        """Smallest value on the box faces (+∞ when all face values are +∞)."""
        return float(self.values[self.boundary_mask()].min())

    def padded(self, cells: int | Sequence[int]) -> "GridFunction":
        """Embed into a larger aligned box, filling the new nodes with +∞."""
        per_axis = [cells] * self.ndim if isinstance(cells, int) else list(cells)
        axes = tuple(axis.padded(c) for axis, c in zip(self.axes, per_axis, strict=True))
        values = np.pad(
            self.values,
            [(c, c) for c in per_axis],
            mode="constant",
            constant_values=np.inf,
        )
        return GridFunction(axes, values, allow_negative_infinity=self.allow_negative_infinity)

    def sample(self, points: np.ndarray) -> np.ndarray:
        """Values at arbitrary points by nearest node; +∞ outside the box."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        index = []
        inside = np.ones(pts.shape[0], dtype=bool)
        for dim, axis in enumerate(self.axes):
            position = (pts[:, dim] - axis.lo) / axis.step
            nearest = np.rint(position).astype(int)
            inside &= (position >= -0.5) & (position <= axis.count - 0.5)
            index.append(np.clip(nearest, 0, axis.count - 1))
        result = self.values[tuple(index)].astype(float)
        result[~inside] = np.inf
        return result

    def is_even(self, rtol: float = 1e-9, atol: float = 1e-12) -> bool:
        """``f(−x) = f(x)`` on a symmetric grid, comparing infinities exactly."""
        if not all(axis.is_symmetric for axis in self.axes):
            return False
        flipped = np.flip(self.values)
        matching_inf = np.isinf(self.values) & (self.values == flipped)
        finite = np.isfinite(self.values) & np.isfinite(flipped)
        if not np.array_equal(matching_inf | finite, np.ones(self.shape, dtype=bool)):
            return False
        return bool(np.allclose(self.values[finite], flipped[finite], rtol=rtol, atol=atol))
