"""Discrete Legendre transforms of grid functions and radial profiles.

The grid transform factorizes coordinate-wise:
sup_y ⟨x, y⟩ − f(y) = sup_{y₁} x₁y₁ + sup_{y₂} x₂y₂ + … − f(y), so an n-dimensional
conjugate is n passes of a one-dimensional max-plus product. ``legendre_at``
is the direct maximum over all nodes and serves as the oracle.
"""

from collections.abc import Sequence

import numpy as np

from santalo.commons.telemetry.logging import get_logger
from santalo.core.grid import Axis, GridFunction, as_axes
from santalo.core.profile import RadialProfile

logger = get_logger(__name__)

CHUNK_ENTRIES = 4_000_000


def _max_plus_axis(values: np.ndarray, src: Axis, dst: Axis, axis_index: int) -> np.ndarray:
    """out[..., k, ...] = max_j values[..., j, ...] + dst_k·src_j along one axis."""
    moved = np.moveaxis(values, axis_index, -1)
    flat = moved.reshape(-1, src.count)
    products = np.outer(dst.nodes, src.nodes)
    out = np.empty((flat.shape[0], dst.count))
    rows = max(1, CHUNK_ENTRIES // (src.count * dst.count))
    for start in range(0, flat.shape[0], rows):
        block = flat[start : start + rows, None, :] + products[None, :, :]
        out[start : start + rows] = block.max(axis=-1)
    return np.moveaxis(out.reshape(*moved.shape[:-1], dst.count), -1, axis_index)


def legendre_grid(f: GridFunction, out_axes: Axis | Sequence[Axis] | None = None) -> GridFunction:
    """Lf(x) = max over in-grid y of ⟨x, y⟩ − f(y), by iterated one-dimensional passes.

    Args:
        f: Function with at least one finite value.
        out_axes: Slope grid; defaults to the grid of ``f``.

    Returns:
        The discrete conjugate, finite at every output node.
    """
    axes = f.axes if out_axes is None else as_axes(out_axes, f.ndim)
    values = -np.asarray(f.values, dtype=float)
    for axis_index, (src, dst) in enumerate(zip(f.axes, axes, strict=True)):
        values = _max_plus_axis(values, src, dst, axis_index)
    logger.debug("legendre_grid nodes_in=%s nodes_out=%s", f.values.size, values.size)
    return GridFunction(axes, values)


def legendre_at(f: GridFunction, points: np.ndarray) -> np.ndarray:
    """sup over finite nodes y of ⟨x, y⟩ − f(y) at arbitrary points ``(N, n)``."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    finite = f.finite_mask.ravel()
    nodes = f.points[finite]
    fy = f.values.ravel()[finite]
    result = np.empty(pts.shape[0])
    rows = max(1, CHUNK_ENTRIES // nodes.shape[0])
    for start in range(0, pts.shape[0], rows):
        result[start : start + rows] = np.max(pts[start : start + rows] @ nodes.T - fy[None, :], axis=1)
    return result


def legendre_profile(profile: RadialProfile, slopes: Sequence[float] | np.ndarray) -> np.ndarray:
    """LΨ(ρ) = sup_{s≥0} ρs − Ψ(s) on a slope grid, +∞ above the terminal slope of Ψ."""
    return np.asarray(profile.legendre_dual()(np.asarray(slopes, dtype=float)), dtype=float)
