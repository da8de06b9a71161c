"""Decreasing and increasing rearrangements by distribution-function inversion.

Node values are sorted, their cell masses accumulated, and each output node
takes the value whose cumulative mass first exceeds the node's mass
coordinate. Equal values form one plateau automatically. Lebesgue output lives
on the recentered grid (same count and step); Gaussian output stays on the
input axis and its superlevel sets are half-lines ``{x < a}``.
"""

import numpy as np

from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.commons.telemetry.logging import get_logger
from santalo.core.grid import GridFunction, mesh
from santalo.core.measure import MeasureSpec

logger = get_logger(__name__)

# relative slack absorbing rounding in cumulative masses at exact cell boundaries
TIE_TOL = 1e-9


def output_mass_coordinates(f: GridFunction, measure: MeasureSpec) -> tuple[tuple, np.ndarray]:
    """Axes of the rearranged function and the mass coordinate of each of its nodes."""
    axes = measure.rearranged_axes(f)
    if measure.is_gaussian:
        masses = measure.axis_masses(axes[0])
        coordinates = np.cumsum(masses) - 0.5 * masses
        return axes, coordinates
    coords = mesh(axes)
    return axes, measure.mass_of_radius(np.sqrt(sum(c * c for c in coords)))


def _invert(
    sorted_values: np.ndarray,
    sorted_masses: np.ndarray,
    coordinates: np.ndarray,
    beyond: float,
) -> np.ndarray:
    cumulative = np.cumsum(sorted_masses)
    tol = TIE_TOL * float(sorted_masses.max())
    index = np.searchsorted(cumulative, coordinates + tol, side="right")
    padded = np.append(sorted_values, beyond)
    return padded[np.minimum(index, sorted_values.size)]


def decreasing_rearrangement(f: GridFunction, measure: MeasureSpec) -> GridFunction:
    """f* with superlevel sets the rearranged superlevel sets of f.

    Args:
        f: Nonnegative grid function.
        measure: Lebesgue (balls) or Gaussian (left half-lines).

    Returns:
        The rearrangement, 0 beyond the total mass of the grid.

    Raises:
        SantaloError: ``precondition_failed`` for negative values.
    """
    measure.require_dimension(f)
    if f.finite_min < 0:
        raise SantaloError(
            code=ErrorCode.PRECONDITION_FAILED,
            message="decreasing rearrangement needs a nonnegative function",
            details={"min": f.finite_min},
        )
    masses = measure.cell_masses(f).ravel()
    values = f.values.ravel()
    order = np.argsort(-values, kind="stable")
    axes, coordinates = output_mass_coordinates(f, measure)
    out = _invert(values[order], masses[order], coordinates, beyond=0.0)
    logger.debug("decreasing_rearrangement measure=%s nodes=%s", measure.label, values.size)
    return GridFunction(axes, out.reshape(tuple(a.count for a in axes)))


def increasing_rearrangement(f: GridFunction, measure: MeasureSpec) -> GridFunction:
    """f_* = −log (e^{−f})*: sublevel sets are the rearranged sublevel sets of f.

    +∞ nodes of f carry no mass of e^{−f}, so f_* is +∞ beyond the mass of the
    finite part.
    """
    measure.require_dimension(f)
    masses = measure.cell_masses(f).ravel()
    values = f.values.ravel()
    finite = np.isfinite(values)
    order = np.argsort(values[finite], kind="stable")
    axes, coordinates = output_mass_coordinates(f, measure)
    out = _invert(values[finite][order], masses[finite][order], coordinates, beyond=np.inf)
    logger.debug("increasing_rearrangement measure=%s nodes=%s", measure.label, values.size)
    return GridFunction(axes, out.reshape(tuple(a.count for a in axes)))


def rearranged_radius(measure: MeasureSpec, mass: float) -> float:
    """Radius of the ball (or end of the half-line) carrying ``mass``."""
    return float(measure.radius_for_mass(mass))
