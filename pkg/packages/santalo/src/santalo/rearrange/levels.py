"""Level-set masses of grid functions.

Masses count grid cells only; a cell belongs to a level set when its node
does. The error bound is the mass of cells whose 3ⁿ neighbourhood has values
on both sides of the level, i.e. the one-cell layer where the grid cannot
locate the boundary.
"""

import numpy as np
from scipy import ndimage

from santalo.commons.schema.base import BaseSchema
from santalo.core.grid import GridFunction
from santalo.core.measure import MeasureSpec


class LevelSetMass(BaseSchema):
    """Mass of one level set together with its one-cell-layer uncertainty."""

    level: float
    mass: float
    error_bound: float


def _neighbourhood_extrema(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    high = ndimage.maximum_filter(values, size=3, mode="nearest")
    low = ndimage.minimum_filter(values, size=3, mode="nearest")
    return high, low


def superlevel_mask(f: GridFunction, level: float) -> np.ndarray:
    return f.values > level


def sublevel_mask(f: GridFunction, level: float) -> np.ndarray:
    return f.values < level


def straddle_mask(f: GridFunction, level: float) -> np.ndarray:
    """Cells whose neighbourhood contains values on both sides of ``level``."""
    high, low = _neighbourhood_extrema(f.values)
    return (high > level) & (low <= level) | (high >= level) & (low < level)


def superlevel_mass(f: GridFunction, level: float, measure: MeasureSpec) -> LevelSetMass:
    """μ({f > λ}) over the grid cells.

    Raises:
        SantaloError: ``dimension_mismatch`` when the measure and grid disagree.
    """
    masses = measure.cell_masses(f)
    return LevelSetMass(
        level=level,
        mass=float(masses[superlevel_mask(f, level)].sum()),
        error_bound=float(masses[straddle_mask(f, level)].sum()),
    )


def sublevel_mass(f: GridFunction, level: float, measure: MeasureSpec) -> LevelSetMass:
    """μ({f < λ}) over the grid cells."""
    masses = measure.cell_masses(f)
    return LevelSetMass(
        level=level,
        mass=float(masses[sublevel_mask(f, level)].sum()),
        error_bound=float(masses[straddle_mask(f, level)].sum()),
    )


def level_masses(
    f: GridFunction,
    levels: np.ndarray,
    measure: MeasureSpec,
    *,
    sublevel: bool = True,
) -> tuple[np.ndarray, np.ndarray]:
    """Masses and error bounds for many levels at once.

    Returns:
        ``(masses, error_bounds)`` aligned with ``levels``.
    """
    masses = measure.cell_masses(f).ravel()
    values = f.values.ravel()
    high, low = (a.ravel() for a in _neighbourhood_extrema(f.values))
    lv = np.asarray(levels, dtype=float)

    if sublevel:
        inside = values[None, :] < lv[:, None]
    else:
        inside = values[None, :] > lv[:, None]
    straddle = ((high[None, :] > lv[:, None]) & (low[None, :] <= lv[:, None])) | (
        (high[None, :] >= lv[:, None]) & (low[None, :] < lv[:, None])
    )
    return inside @ masses, straddle @ masses


def quantile_levels(f: GridFunction, count: int = 64, *, positive_only: bool = False) -> np.ndarray:
    """Levels at the ``(k + ½)/count`` quantiles of the finite node values."""
    finite = f.values[f.finite_mask]
    if positive_only:
        finite = finite[finite > 0] if np.any(finite > 0) else finite
    return np.quantile(finite, (np.arange(count) + 0.5) / count)
