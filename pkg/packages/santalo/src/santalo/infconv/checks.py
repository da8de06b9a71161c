"""Level-set comparisons for infimum convolutions.

Covers the sublevel decomposition of Q_φ f into enlargements of sublevel sets
of f, the comparison of Q_φ f against Q_φ f_* under an isoperimetric
rearrangement, its Hopf-Lax specialization over a time grid, the semigroup
property and the Hamilton-Jacobi residual of the quadratic Hopf-Lax solution.
"""

from collections.abc import Sequence

import numpy as np
from pydantic import Field
from scipy import ndimage

from santalo.commons.schema.base import BaseSchema
from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.commons.telemetry.logging import get_logger
from santalo.core.grid import GridFunction
from santalo.core.maps import MonotoneMap
from santalo.core.measure import MeasureSpec
from santalo.core.profile import QuadraticProfile, RadialProfile
from santalo.infconv.costs import AnyCost, DistanceCost, HopfLaxCost, InnerProductCost
from santalo.infconv.engine import SetOnGrid, enlarge, hopf_lax, inf_convolution
from santalo.rearrange.levels import level_masses
from santalo.rearrange.rearrangement import increasing_rearrangement
from santalo.reports import ComparisonReport, ComparisonRow, Report

logger = get_logger(__name__)

DEFAULT_DENOMINATORS = (4, 8, 16, 32)


class ComparisonSettings(BaseSchema):
    """Tolerance model of the level-set comparisons."""

    slack_cells: float = Field(default=4.0, ge=0)
    pad_fraction: float = Field(default=0.5, ge=0, le=2.0)
    levels: int = Field(default=64, ge=1)


# -- sublevel decomposition ---------------------------------------------------


def _smallest_rational_above(v: np.ndarray, denominator: int) -> np.ndarray:
    """min{p/d > v : 1 ≤ d ≤ D}, evaluated per denominator in floats."""
    best = np.full(v.shape, np.inf)
    for d in range(1, denominator + 1):
        best = np.minimum(best, (np.floor(v * d) + 1.0) / d)
    return best


def _largest_radius(q1: np.ndarray, level: float, denominator: int) -> np.ndarray:
    """max{q2 = p/d : q1 + q2 < λ} with the sum checked in floats."""
    best = np.full(q1.shape, -np.inf)
    room = level - q1
    for d in range(1, denominator + 1):
        q2 = (np.ceil(room * d) - 1.0) / d
        q2 = np.where(q1 + q2 >= level, q2 - 1.0 / d, q2)
        best = np.maximum(best, q2)
    return best


def decomposition_union(f: GridFunction, cost: AnyCost, level: float, denominator: int) -> SetOnGrid:
    """∪ {f < q₁}_{φ,q₂} over rationals q₁ + q₂ < λ with denominators ≤ D.

    For a fixed node y the best pair takes the smallest admissible q₁ above
    f(y) and the largest q₂ below λ − q₁, so the union is the set where
    min_y φ(x, y) − q₂(y) is negative.
    """
    finite = f.finite_mask
    q1 = _smallest_rational_above(f.values[finite], denominator)
    offset = np.full(f.shape, np.inf)
    offset[finite] = -_largest_radius(q1, level, denominator)
    reach = inf_convolution(GridFunction(f.axes, offset), cost, fast=False)
    return SetOnGrid(f.axes, reach.values < 0)


def decomposition_check(
    f: GridFunction,
    cost: AnyCost,
    level: float,
    denominators: Sequence[int] = DEFAULT_DENOMINATORS,
) -> Report:
    """Sublevel set of Q_φ f against the rational union of enlarged sublevel sets of f.

    Asserts the union is inside the sublevel set for every budget, the residual
    is nonincreasing as the budget grows, and at the largest budget the residual
    stays within two cells of the boundary (at most two cells per boundary point
    in one dimension).
    """
    q = inf_convolution(f, cost, fast=False)
    sublevel = SetOnGrid(f.axes, q.values < level)
    residuals: list[int] = []
    included = True
    last_union: SetOnGrid | None = None
    for d in sorted(denominators):
        union = decomposition_union(f, cost, level, d)
        included = included and union <= sublevel
        residuals.append((sublevel - union).cell_count)
        last_union = union
    monotone = all(b <= a for a, b in zip(residuals, residuals[1:], strict=False))

    residual = sublevel - last_union if last_union is not None else sublevel
    if f.ndim == 1:
        boundary_points = int(np.count_nonzero(np.diff(sublevel.mask.astype(int))))
        near_boundary = residual.cell_count <= 2 * max(boundary_points, 1)
    else:
        gap = ndimage.distance_transform_edt(sublevel.mask, sampling=f.steps)
        near_boundary = bool(np.all(gap[residual.mask] <= 2.0 * max(f.steps) * (1 + 1e-9)))
    logger.debug("decomposition level=%s residuals=%s", level, residuals)
    return Report(
        check="decomposition",
        passed=included and monotone and near_boundary,
        details={
            "level": level,
            "denominators": list(sorted(denominators)),
            "residual_cells": residuals,
            "sublevel_cells": sublevel.cell_count,
            "union_inside": included,
            "monotone": monotone,
            "near_boundary": near_boundary,
        },
    )


# -- comparison under rearrangement ---------------------------------------------


def require_supported_pair(measure: MeasureSpec, cost: AnyCost) -> None:
    """Only pairs whose rearrangement is isoperimetric for the cost are certified."""
    supported = isinstance(cost, DistanceCost) or (isinstance(cost, HopfLaxCost) and not measure.is_gaussian)
    if isinstance(cost, InnerProductCost) or not supported:
        raise SantaloError(
            code=ErrorCode.UNSUPPORTED_PAIR,
            message="the rearrangement is not certified isoperimetric for this measure and cost",
            details={"measure": measure.label, "cost": cost.label},
        )


def _pad_cells(f: GridFunction, fraction: float) -> list[int]:
    return [int(round(fraction * (axis.count - 1) / 2)) for axis in f.axes]


def _level_grid(u: GridFunction, v: GridFunction, cap: float, count: int) -> np.ndarray:
    low = min(u.finite_min, v.finite_min)
    if not np.isfinite(cap) or cap <= low:
        raise SantaloError(
            code=ErrorCode.PRECONDITION_FAILED,
            message="no level below the boundary minimum of the convolved functions",
            details={"min": low, "cap": cap},
        )
    return np.linspace(low, cap, count + 2)[1:-1]


def comparison_theorem_check(
    f: GridFunction,
    cost: AnyCost,
    measure: MeasureSpec,
    levels: Sequence[float] | None = None,
    settings: ComparisonSettings | None = None,
) -> ComparisonReport:
    """μ({Q_φ f < λ}) ≥ μ({Q_φ f_* < λ}) and μ({Q_φ f ≥ λ}) ≤ μ({Q_φ f_* ≥ λ}).

    Both convolutions are evaluated on equally sized boxes padded with +∞, and
    λ stays below the smallest boundary value of either, so every sublevel set
    is complete. The superlevel form is read inside those equal-mass boxes.

    Raises:
        SantaloError: ``unsupported_pair`` for pairs outside the certified list.
    """
    cfg = settings or ComparisonSettings()
    measure.require_dimension(f)
    require_supported_pair(measure, cost)

    rearranged = increasing_rearrangement(f, measure)
    pad = _pad_cells(f, cfg.pad_fraction)
    f_box = f.padded(pad)
    r_box = rearranged.padded(pad)
    u = inf_convolution(f_box, cost)
    v = inf_convolution(r_box, cost)
    cap = min(u.boundary_min(), v.boundary_min())
    grid = np.asarray(levels, dtype=float) if levels is not None else _level_grid(u, v, cap, cfg.levels)
    grid = grid[grid < cap]

    mass_u, err_u = level_masses(u, grid, measure)
    mass_v, err_v = level_masses(v, grid, measure)
    total_u = float(measure.cell_masses(u).sum())
    total_v = float(measure.cell_masses(v).sum())
    slack_base = cfg.slack_cells * max(measure.max_cell_mass(u), measure.max_cell_mass(v))

    rows: list[ComparisonRow] = []
    for level, mu, mv, eu, ev in zip(grid, mass_u, mass_v, err_u, err_v, strict=True):
        slack = slack_base + (float(eu + ev) if f.ndim >= 2 else 0.0)
        rows.append(
            ComparisonRow(
                level=float(level),
                mass_lhs=float(mu),
                mass_rhs=float(mv),
                slack=slack,
                verdict=bool(mu >= mv - slack),
            )
        )
        hi_u, hi_v = total_u - float(mu), total_v - float(mv)
        rows.append(
            ComparisonRow(
                level=float(level),
                mass_lhs=hi_u,
                mass_rhs=hi_v,
                slack=slack,
                verdict=hi_u <= hi_v + slack,
                form="superlevel",
            )
        )
    report = ComparisonReport(
        check="comparison_theorem",
        cost=cost.label,
        measure=measure.label,
        slack_model=f"{cfg.slack_cells:g} max cell masses" + (" + error bounds" if f.ndim >= 2 else ""),
        rows=rows,
        details={
            "level_cap": cap,
            "pad_cells": pad,
            "rearranged_axes": [[a.lo, a.hi, a.count] for a in rearranged.axes],
            "rearrangement": f"increasing/{measure.label}",
        },
    )
    logger.debug("comparison cost=%s levels=%s verdict=%s", cost.label, grid.size, report.verdict)
    return report


def hopf_lax_comparison_check(
    f: GridFunction,
    times: Sequence[float],
    profile: RadialProfile | None = None,
    levels: int = 64,
    settings: ComparisonSettings | None = None,
) -> ComparisonReport:
    """|{v_t < λ}| ≤ |{u_t < λ}| + slack with u_t = Q_t f and v_t = Q_t f_*, over a time grid."""
    cfg = (settings or ComparisonSettings()).model_copy(update={"levels": levels})
    g = profile or QuadraticProfile(1.0)
    measure = MeasureSpec.lebesgue(f.ndim)
    rows: list[ComparisonRow] = []
    max_gap = 0.0
    for t in times:
        report = comparison_theorem_check(f, HopfLaxCost(g, t), measure, settings=cfg)
        for row in report.rows:
            if row.form == "sublevel":
                rows.append(row.model_copy(update={"t": float(t)}))
                max_gap = max(max_gap, abs(row.mass_lhs - row.mass_rhs))
    return ComparisonReport(
        check="hopf_lax_comparison",
        cost=f"hopf_lax({type(g).__name__})",
        measure=measure.label,
        slack_model=f"{cfg.slack_cells:g} cells",
        rows=rows,
        details={"times": [float(t) for t in times], "max_abs_gap": max_gap},
    )


def hopf_lax_semigroup_check(f: GridFunction, t: float, s: float, tol: float = 1e-9) -> Report:
    """Q_{t+s} f = Q_s(Q_t f) for the quadratic profile, at nodes away from the box edge.

    The discrete minimum over the grid is exact for this identity up to the
    grid restriction of the intermediate minimizer, so nodes within a quarter
    of the box from the edge are excluded.
    """
    g = QuadraticProfile(1.0)
    direct = hopf_lax(f, g, t + s)
    staged = hopf_lax(hopf_lax(f, g, t), g, s)
    interior = np.ones(f.shape, dtype=bool)
    for axis_index, axis in enumerate(f.axes):
        margin = axis.count // 4
        index = [slice(None)] * f.ndim
        index[axis_index] = np.r_[0:margin, axis.count - margin : axis.count]  # type: ignore[call-overload]
        interior[tuple(index)] = False
    both = interior & np.isfinite(direct.values) & np.isfinite(staged.values)
    deviation = float(np.max(np.abs(direct.values[both] - staged.values[both]))) if both.any() else 0.0
    # staging can only lose minimizers, never gain them
    scale = max(1.0, float(np.max(np.abs(direct.values[both])))) if both.any() else 1.0
    lower_ok = bool(np.all(staged.values[both] >= direct.values[both] - tol * scale))
    return Report(
        check="hopf_lax_semigroup",
        passed=lower_ok and deviation <= max(f.steps) ** 2 * (1.0 / t + 1.0 / s) + tol * scale,
        details={"t": t, "s": s, "max_deviation": deviation, "nodes": int(both.sum())},
    )


def hamilton_jacobi_residual(f: GridFunction, t: float, dt: float | None = None) -> float:
    """sup |∂_t u + ½|∇u|²| for u = Q_t f (quadratic profile) at smooth interior nodes.

    Smooth nodes are those whose one-sided differences differ by at most the
    semiconcavity bound 2h/t along every axis.
    """
    g = QuadraticProfile(1.0)
    delta = dt or 0.05 * t
    before = hopf_lax(f, g, t - delta).values
    after = hopf_lax(f, g, t + delta).values
    u = hopf_lax(f, g, t).values
    with np.errstate(invalid="ignore"):
        d_t = (after - before) / (2.0 * delta)
    grad_sq = np.zeros(f.shape)
    smooth = np.isfinite(u) & np.isfinite(before) & np.isfinite(after)
    for axis_index, step in enumerate(f.steps):
        forward = (np.roll(u, -1, axis=axis_index) - u) / step
        backward = (u - np.roll(u, 1, axis=axis_index)) / step
        central = 0.5 * (forward + backward)
        grad_sq += central * central
        with np.errstate(invalid="ignore"):
            smooth &= np.abs(forward - backward) <= 2.0 * step / t
        edge = [slice(None)] * f.ndim
        for cut in (0, -1):
            edge[axis_index] = cut  # type: ignore[call-overload]
            smooth[tuple(edge)] = False
    if not smooth.any():
        raise SantaloError(code=ErrorCode.PRECONDITION_FAILED, message="no smooth interior node for the residual")
    residual = np.abs(d_t + 0.5 * grad_sq)[smooth]
    return float(residual.max())


def cost_transfer_check(a: SetOnGrid, alpha: MonotoneMap, eps: float) -> Report:
    """enlarge(A, α(‖·‖), α(ε)) equals enlarge(A, ‖·‖, ε) cell for cell for strictly increasing α."""
    if not alpha.is_strictly_increasing:
        raise SantaloError(code=ErrorCode.PRECONDITION_FAILED, message="cost transfer needs a strictly increasing map")
    transferred = enlarge(a, DistanceCost(alpha), float(alpha(eps)))
    plain = enlarge(a, DistanceCost.euclidean(), eps)
    mismatched = int(np.count_nonzero(transferred.mask ^ plain.mask))
    return Report(
        check="cost_transfer",
        passed=mismatched == 0,
        details={"eps": eps, "alpha": alpha.name, "mismatched_cells": mismatched, "cells": plain.cell_count},
    )
