"""T-transforms and polar transforms of geometric convex functions.

Both are suprema over the in-grid nodes. The polar quotient follows the
conventions 0/0 = 0 and (positive)/0 = +∞; a negative numerator over a zero
denominator contributes nothing. Nodes where f = +∞ contribute the quotient 0,
which is also the limit of the quotient at infinity for superlinear f, so the
discrete polar transform is never negative.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.commons.telemetry.logging import get_logger
from santalo.core.grid import Axis, GridFunction, as_axes, grid_points
from santalo.core.maps import MonotoneMap
from santalo.core.profile import RadialProfile

logger = get_logger(__name__)

CHUNK_ENTRIES = 4_000_000


def require_geometric_convex(f: GridFunction, tol: float = 1e-9) -> None:
    """Reject samples that are not nonnegative, even and zero at the origin.

    Raises:
        SantaloError: ``precondition_failed`` naming the violated property.
    """
    if f.finite_min < -tol:
        raise SantaloError(
            code=ErrorCode.PRECONDITION_FAILED,
            message="function must be nonnegative",
            details={"min": f.finite_min},
        )
    origin = f.origin_index()
    if origin is None or abs(float(f.values[origin])) > tol:
        raise SantaloError(
            code=ErrorCode.PRECONDITION_FAILED,
            message="function must vanish at the origin node",
            details={"value_at_origin": None if origin is None else float(f.values[origin])},
        )
    if not f.is_even(rtol=tol, atol=tol):
        raise SantaloError(code=ErrorCode.PRECONDITION_FAILED, message="function must be even")


@dataclass(frozen=True)
class SupResult:
    """Values of a node-wise supremum together with where it was attained."""

    values: np.ndarray
    argmax: np.ndarray


def _polar_terms(products: np.ndarray, fy: np.ndarray) -> np.ndarray:
    numerator = products - 1.0
    denominator = np.broadcast_to(fy[None, :], numerator.shape)
    with np.errstate(divide="ignore", invalid="ignore"):
        quotient = numerator / denominator
    at_zero = np.where(numerator > 0, np.inf, np.where(numerator == 0, 0.0, -np.inf))
    terms = np.where(denominator > 0, quotient, at_zero)
    return np.where(np.isinf(denominator), 0.0, terms)


def _sup(
    points: np.ndarray,
    f: GridFunction,
    terms_for: Callable[[np.ndarray, np.ndarray], np.ndarray],
) -> SupResult:
    nodes = f.points
    fy = f.values.ravel()
    values = np.empty(points.shape[0])
    argmax = np.empty(points.shape[0], dtype=int)
    rows = max(1, CHUNK_ENTRIES // nodes.shape[0])
    for start in range(0, points.shape[0], rows):
        terms = terms_for(points[start : start + rows] @ nodes.T, fy)
        argmax[start : start + rows] = np.argmax(terms, axis=1)
        values[start : start + rows] = np.max(terms, axis=1)
    return SupResult(values=values, argmax=argmax)


def _boundary_fraction(f: GridFunction, result: SupResult, finite: np.ndarray) -> float:
    """Share of finite outputs whose maximizer sits on the box faces."""
    if not finite.any():
        return 0.0
    on_face = f.boundary_mask().ravel()[result.argmax[finite]]
    return float(on_face.mean())


def polar_at(f: GridFunction, points: np.ndarray) -> np.ndarray:
    """f°(x) at arbitrary points; f°(0) = 0."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    values = np.maximum(_sup(pts, f, _polar_terms).values, 0.0)
    values[np.all(pts == 0.0, axis=1)] = 0.0
    return values


def polar_transform_detailed(
    f: GridFunction,
    out_axes: Axis | Sequence[Axis] | None = None,
) -> tuple[GridFunction, float]:
    """Polar transform together with the share of maximizers on the box faces.

    A large share means the supremum is truncated by the box and under-reports.
    """
    require_geometric_convex(f)
    axes = f.axes if out_axes is None else as_axes(out_axes, f.ndim)
    points = grid_points(axes)
    result = _sup(points, f, _polar_terms)
    values = np.maximum(result.values, 0.0)
    values[np.all(points == 0.0, axis=1)] = 0.0
    fraction = _boundary_fraction(f, result, np.isfinite(values) & (values > 0))
    logger.debug("polar_transform nodes_out=%s boundary_fraction=%s", values.size, fraction)
    return GridFunction(axes, values.reshape(tuple(a.count for a in axes))), fraction


def polar_transform(f: GridFunction, out_axes: Axis | Sequence[Axis] | None = None) -> GridFunction:
    """f°(x) = sup_y (⟨x, y⟩ − 1)/f(y) over the in-grid nodes.

    Raises:
        SantaloError: ``precondition_failed`` unless f is nonnegative, even and 0 at the origin.
    """
    return polar_transform_detailed(f, out_axes)[0]


def t_transform(
    f: GridFunction,
    rho: MonotoneMap,
    out_axes: Axis | Sequence[Axis] | None = None,
) -> GridFunction:
    """Tf(x) = sup_y ρ(⟨x, y⟩) − f(y) over the in-grid nodes.

    The origin node gives the term ρ(0) − f(0) = 0, so Tf ≥ 0 exactly.

    Raises:
        SantaloError: ``validation_error`` for ρ not increasing or ρ(0) ≠ 0;
            ``precondition_failed`` for f outside the geometric convex class.
    """
    if not rho.is_strictly_increasing or abs(float(rho(0.0))) > 1e-12:
        raise SantaloError(
            code=ErrorCode.VALIDATION_ERROR,
            message="ρ must be increasing with ρ(0) = 0",
            details={"rho": rho.name},
        )
    require_geometric_convex(f)
    axes = f.axes if out_axes is None else as_axes(out_axes, f.ndim)
    values = _sup(grid_points(axes), f, lambda products, fy: rho(products) - fy[None, :]).values
    return GridFunction(axes, values.reshape(tuple(a.count for a in axes)))


def polar_profile(profile: RadialProfile, radii: Sequence[float] | np.ndarray) -> np.ndarray:
    """Ψ°(r) = sup_{s>0} (rs − 1)/Ψ(s) on a radius grid, from the exact dual profile."""
    return np.asarray(profile.polar_dual()(np.asarray(radii, dtype=float)), dtype=float)
