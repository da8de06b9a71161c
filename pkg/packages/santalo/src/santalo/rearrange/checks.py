"""Checks on rearrangements: equimeasurability, set identities, layer cake, Gaussian isoperimetry."""

from collections.abc import Sequence

import numpy as np
from scipy.special import ndtr, ndtri

from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.commons.telemetry.logging import get_logger
from santalo.core.grid import GridFunction, mesh
from santalo.core.measure import MeasureSpec
from santalo.rearrange.levels import level_masses, quantile_levels
from santalo.rearrange.rearrangement import decreasing_rearrangement, increasing_rearrangement
from santalo.reports import LevelReport, LevelRow, Report

logger = get_logger(__name__)


def equimeasurability_check(
    f: GridFunction,
    measure: MeasureSpec,
    levels: Sequence[float] | None = None,
    *,
    count: int = 64,
) -> LevelReport:
    """|{f > λ}| against |{f* > λ}| on a quantile grid, within the summed error bounds."""
    rearranged = decreasing_rearrangement(f, measure)
    grid = np.asarray(levels if levels is not None else quantile_levels(f, count, positive_only=True))
    mass_f, err_f = level_masses(f, grid, measure, sublevel=False)
    mass_r, err_r = level_masses(rearranged, grid, measure, sublevel=False)
    rows = [
        LevelRow(
            level=float(level),
            mass_f=float(mf),
            mass_rearranged=float(mr),
            error_bound=float(ef + er),
            verdict=bool(abs(mf - mr) <= ef + er + 1e-12),
        )
        for level, mf, mr, ef, er in zip(grid, mass_f, mass_r, err_f, err_r, strict=True)
    ]
    return LevelReport(check="equimeasurability", measure=measure.label, rows=rows)


def _node_radius(f: GridFunction, measure: MeasureSpec) -> np.ndarray:
    if measure.is_gaussian:
        return f.axes[0].nodes
    return np.sqrt(sum(c * c for c in mesh(f.axes)))


def _set_extent(radius: np.ndarray, mask: np.ndarray, measure: MeasureSpec) -> float:
    """Largest node radius (or right-most node, Gaussian) inside ``mask``."""
    if not mask.any():
        return -np.inf if measure.is_gaussian else 0.0
    return float(radius[mask].max())


def rearrangement_level_check(
    f: GridFunction,
    measure: MeasureSpec,
    levels: Sequence[float] | None = None,
    *,
    count: int = 64,
) -> Report:
    """Rearranged level sets are the level sets of the rearranged function.

    For each λ the extent (ball radius or half-line end) of ``{f* > λ}`` must
    match the rearranged set of mass ``|{f > λ}|`` within one cell, and the same
    for ``{f_* < λ}`` against ``|{f < λ}|``. Extents must be monotone in λ.
    """
    measure.require_dimension(f)
    grid = np.sort(np.asarray(levels if levels is not None else quantile_levels(f, count)))
    decreasing = decreasing_rearrangement(f, measure) if f.finite_min >= 0 else None
    increasing = increasing_rearrangement(f, measure)
    tolerance = float(np.sqrt(f.ndim) * max(f.steps)) * (1.0 + 1e-9)
    if measure.is_gaussian:
        # half-line ends fall within one and a half cells of the last node inside
        tolerance = 1.5 * max(f.steps) * (1.0 + 1e-9)

    worst = 0.0
    radii_sub: list[float] = []
    radii_super: list[float] = []
    mass_sub, _ = level_masses(f, grid, measure, sublevel=True)
    mass_super, _ = level_masses(f, grid, measure, sublevel=False)
    for level, m_sub, m_super in zip(grid, mass_sub, mass_super, strict=True):
        target = float(measure.radius_for_mass(m_sub))
        got = _set_extent(_node_radius(increasing, measure), increasing.values < level, measure)
        radii_sub.append(got)
        if np.isfinite(target) and (increasing.values < level).any():
            worst = max(worst, abs(got - target))
        if decreasing is not None:
            target = float(measure.radius_for_mass(m_super))
            got = _set_extent(_node_radius(decreasing, measure), decreasing.values > level, measure)
            radii_super.append(got)
            if np.isfinite(target) and (decreasing.values > level).any():
                worst = max(worst, abs(got - target))

    nested = bool(np.all(np.diff(radii_sub) >= 0)) and bool(np.all(np.diff(radii_super) <= 0))
    passed = worst <= tolerance and nested
    logger.debug("rearrangement_levels worst=%s tolerance=%s nested=%s", worst, tolerance, nested)
    return Report(
        check="rearrangement_levels",
        passed=passed,
        details={"max_radius_gap": worst, "tolerance": tolerance, "nested": nested, "levels": len(grid)},
    )


def layer_cake_check(
    f: GridFunction,
    measure: MeasureSpec,
    levels: int = 256,
    rel_tol: float = 0.01,
) -> Report:
    """∫e^{−f} by cell summation against ∫₀^{sup e^{−f}} μ({e^{−f} > s}) ds."""
    masses = measure.cell_masses(f)
    weights = np.exp(-f.values)
    direct = float((masses * weights).sum())
    top = float(weights.max())
    s = top * (np.arange(levels) + 0.5) / levels
    layer_masses, _ = level_masses(f, -np.log(s), measure, sublevel=True)
    layered = float(layer_masses.sum() * top / levels)
    deviation = abs(layered - direct) / direct if direct > 0 else abs(layered)
    return Report(
        check="layer_cake",
        passed=deviation <= rel_tol,
        details={"direct": direct, "layered": layered, "relative_deviation": deviation},
    )


def _merge_intervals(intervals: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    ordered = sorted((float(a), float(b)) for a, b in intervals if b > a)
    merged: list[tuple[float, float]] = []
    for a, b in ordered:
        if merged and a <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], b))
        else:
            merged.append((a, b))
    return merged


def gaussian_mass(intervals: Sequence[tuple[float, float]]) -> float:
    """γ of a finite union of intervals (endpoints may be ±∞)."""
    return float(sum(ndtr(b) - ndtr(a) for a, b in _merge_intervals(intervals)))


def gaussian_isoperimetry_check(
    intervals: Sequence[tuple[float, float]],
    eps_grid: Sequence[float],
    tolerance: float = 1e-12,
) -> Report:
    """γ(A_ε) ≥ Φ(Φ⁻¹(γ(A)) + ε) for a union of intervals, with exact interval arithmetic.

    Raises:
        SantaloError: ``validation_error`` for an empty set or negative ε.
    """
    merged = _merge_intervals(intervals)
    if not merged:
        raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="isoperimetry needs a nonempty set")
    base = gaussian_mass(merged)
    rows = []
    worst = np.inf
    for eps in eps_grid:
        if eps < 0:
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="enlargement radius must be nonnegative")
        enlarged = gaussian_mass([(a - eps, b + eps) for a, b in merged])
        bound = float(ndtr(ndtri(base) + eps))
        worst = min(worst, enlarged - bound)
        rows.append({"eps": float(eps), "mass": enlarged, "bound": bound})
    return Report(
        check="gaussian_isoperimetry",
        passed=bool(worst >= -tolerance),
        details={"base_mass": base, "min_margin": float(worst), "rows": rows},
    )
