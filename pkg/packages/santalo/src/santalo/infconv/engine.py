"""Infimum convolution, Hopf-Lax evolution and enlargements on grids.

The brute-force minimum over all in-grid nodes is the reference. Two fast
paths compute the same discrete minimum: the separable lower envelope of
parabolas for quadratic Hopf-Lax costs, and forward/backward sweeps for the
one-dimensional distance cost.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.commons.telemetry.logging import get_logger
from santalo.core.grid import Axis, GridFunction, as_axes, grid_points, mesh
from santalo.core.measure import MeasureSpec
from santalo.core.profile import QuadraticProfile, RadialProfile
from santalo.infconv.costs import AnyCost, DistanceCost, HopfLaxCost

logger = get_logger(__name__)

CHUNK_ENTRIES = 4_000_000


def _min_cost(out_points: np.ndarray, in_points: np.ndarray, in_values: np.ndarray, cost: AnyCost) -> np.ndarray:
    """min_j in_values[j] + φ(out_i, in_j), chunked over output rows."""
    result = np.full(out_points.shape[0], np.inf)
    if in_points.shape[0] == 0:
        return result
    rows = max(1, CHUNK_ENTRIES // in_points.shape[0])
    for start in range(0, out_points.shape[0], rows):
        block = cost.pairwise(out_points[start : start + rows], in_points)
        result[start : start + rows] = np.min(block + in_values[None, :], axis=1)
    return result


def _parabola_envelope(positions: np.ndarray, values: np.ndarray, queries: np.ndarray, a: float) -> np.ndarray:
    """min_j values[j] + a·(q − positions[j])² for every query (lower envelope of parabolas)."""
    finite = np.isfinite(values)
    if not finite.any():
        return np.full(queries.shape, np.inf)
    p = positions[finite]
    g = values[finite]
    lifted = g + a * p * p
    hull = [0]
    starts = [-np.inf]
    for j in range(1, p.size):
        while True:
            i = hull[-1]
            cross = (lifted[j] - lifted[i]) / (2.0 * a * (p[j] - p[i]))
            if cross <= starts[-1]:
                hull.pop()
                starts.pop()
            else:
                break
        hull.append(j)
        starts.append(cross)
    owner = np.asarray(hull)[np.searchsorted(np.asarray(starts), queries, side="right") - 1]
    return g[owner] + a * (queries - p[owner]) ** 2


def _quadratic_hopf_lax(f: GridFunction, coefficient: float, out_axes: tuple[Axis, ...]) -> np.ndarray:
    values = np.asarray(f.values, dtype=float)
    for axis_index, (src, dst) in enumerate(zip(f.axes, out_axes, strict=True)):
        moved = np.moveaxis(values, axis_index, -1)
        flat = moved.reshape(-1, src.count)
        swept = np.stack([_parabola_envelope(src.nodes, row, dst.nodes, coefficient) for row in flat])
        values = np.moveaxis(swept.reshape(*moved.shape[:-1], dst.count), -1, axis_index)
    return values


def _distance_sweep_1d(values: np.ndarray, step: float) -> np.ndarray:
    """min_j f_j + |i − j|·h by one forward and one backward pass."""
    out = np.array(values, dtype=float)
    for i in range(1, out.size):
        out[i] = min(out[i], out[i - 1] + step)
    for i in range(out.size - 2, -1, -1):
        out[i] = min(out[i], out[i + 1] + step)
    return out


def inf_convolution(
    f: GridFunction,
    cost: AnyCost,
    out_axes: Axis | Sequence[Axis] | None = None,
    *,
    fast: bool = True,
) -> GridFunction:
    """Q_φ f(x) = min over in-grid nodes y of f(y) + φ(x, y).

    Args:
        f: Function with at least one finite value.
        cost: Cost family.
        out_axes: Output grid; defaults to the grid of ``f``.
        fast: Use the exact fast paths where available.

    Returns:
        The discrete infimum convolution on ``out_axes``.

    Raises:
        SantaloError: ``empty_domain`` when no output node is finite.
    """
    axes = f.axes if out_axes is None else as_axes(out_axes, f.ndim)
    if fast and isinstance(cost, HopfLaxCost) and isinstance(cost.profile, QuadraticProfile):
        values = _quadratic_hopf_lax(f, cost.profile.c / (2.0 * cost.t), axes)
    elif fast and isinstance(cost, DistanceCost) and cost.is_euclidean and f.ndim == 1 and axes == f.axes:
        values = _distance_sweep_1d(f.values, f.axes[0].step)
    else:
        finite = f.finite_mask.ravel()
        values = _min_cost(grid_points(axes), f.points[finite], f.values.ravel()[finite], cost).reshape(
            tuple(a.count for a in axes)
        )
    logger.debug("inf_convolution cost=%s nodes_in=%s nodes_out=%s", cost.label, f.values.size, values.size)
    return GridFunction(axes, values)


def hopf_lax(
    f: GridFunction,
    profile: RadialProfile,
    t: float,
    out_axes: Axis | Sequence[Axis] | None = None,
    *,
    fast: bool = True,
) -> GridFunction:
    """Q_t f(x) = min_y f(y) + t·G(‖x − y‖/t), the Hopf-Lax solution at time t."""
    return inf_convolution(f, HopfLaxCost(profile, t), out_axes, fast=fast)


@dataclass(frozen=True, eq=False)
class SetOnGrid:
    """A finite union of grid cells, identified by their nodes."""

    axes: tuple[Axis, ...]
    mask: np.ndarray

    def __post_init__(self) -> None:
        axes = as_axes(self.axes)
        mask = np.asarray(self.mask, dtype=bool)
        if mask.shape != tuple(a.count for a in axes):
            raise SantaloError(
                code=ErrorCode.DIMENSION_MISMATCH,
                message="set mask does not match the grid",
                details={"mask": list(mask.shape), "grid": [a.count for a in axes]},
            )
        mask = mask.copy()
        mask.setflags(write=False)
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def empty(cls, axes: Axis | Sequence[Axis], ndim: int = 1) -> "SetOnGrid":
        resolved = as_axes(axes, ndim if isinstance(axes, Axis) else None)
        return cls(resolved, np.zeros(tuple(a.count for a in resolved), dtype=bool))

    @classmethod
    def from_predicate(
        cls,
        axes: Axis | Sequence[Axis],
        predicate: Callable[..., np.ndarray],
        ndim: int | None = None,
    ) -> "SetOnGrid":
        """Cells whose node satisfies ``predicate(*coords)``."""
        resolved = as_axes(axes, ndim)
        return cls(resolved, np.asarray(predicate(*mesh(resolved)), dtype=bool))

    @property
    def ndim(self) -> int:
        return len(self.axes)

    @property
    def points(self) -> np.ndarray:
        return grid_points(self.axes)[self.mask.ravel()]

    @property
    def cell_count(self) -> int:
        return int(self.mask.sum())

    def is_empty(self) -> bool:
        return not self.mask.any()

    def mass(self, measure: MeasureSpec) -> float:
        cells = GridFunction(self.axes, np.zeros(self.mask.shape))
        return float(measure.cell_masses(cells)[self.mask].sum())

    def complement(self) -> "SetOnGrid":
        return SetOnGrid(self.axes, ~self.mask)

    def __or__(self, other: "SetOnGrid") -> "SetOnGrid":
        return SetOnGrid(self.axes, self.mask | other.mask)

    def __and__(self, other: "SetOnGrid") -> "SetOnGrid":
        return SetOnGrid(self.axes, self.mask & other.mask)

    def __sub__(self, other: "SetOnGrid") -> "SetOnGrid":
        return SetOnGrid(self.axes, self.mask & ~other.mask)

    def __le__(self, other: "SetOnGrid") -> bool:
        return bool(np.all(~self.mask | other.mask))


def enlarge(
    a: SetOnGrid,
    cost: AnyCost,
    eps: float,
    out_axes: Axis | Sequence[Axis] | None = None,
) -> SetOnGrid:
    """Strict enlargement A_{φ,ε} = {x : ∃ y ∈ A, φ(x, y) < ε}.

    Raises:
        SantaloError: ``validation_error`` for negative ε with a cost that does not allow it.
    """
    if eps < 0 and not cost.allows_negative_eps:
        raise SantaloError(
            code=ErrorCode.VALIDATION_ERROR,
            message="negative enlargement radius is only defined for inner-product costs",
            details={"eps": eps, "cost": cost.label},
        )
    axes = a.axes if out_axes is None else as_axes(out_axes, a.ndim)
    shape = tuple(axis.count for axis in axes)
    if a.is_empty():
        return SetOnGrid(axes, np.zeros(shape, dtype=bool))
    in_points = a.points
    best = _min_cost(grid_points(axes), in_points, np.zeros(in_points.shape[0]), cost)
    return SetOnGrid(axes, (best < eps).reshape(shape))
