"""Level-set comparisons for the Legendre, polar and T-transforms.

For f nonnegative, even, convex and zero at the origin, each transform A
satisfies |{Af ≤ λ}| ≤ |{Af_* ≤ λ}| with f_* the increasing rearrangement.
Transforms are evaluated on the half-scale dual box, where the maximizers of
the sampled suprema stay inside the sampled box.
"""

from collections.abc import Sequence
from enum import Enum

import numpy as np
from pydantic import Field

from santalo.commons.schema.base import BaseSchema
from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.commons.telemetry.logging import get_logger
from santalo.core.grid import Axis, GridFunction, as_axes, grid_points
from santalo.core.maps import MonotoneMap
from santalo.core.measure import MeasureSpec
from santalo.rearrange.levels import level_masses
from santalo.rearrange.rearrangement import increasing_rearrangement
from santalo.reports import ComparisonRow, Report, TransformReport
from santalo.transforms.legendre import legendre_at, legendre_grid
from santalo.transforms.polar import polar_transform_detailed, require_geometric_convex, t_transform

logger = get_logger(__name__)

TIE_RTOL = 1e-9


class TransformKind(str, Enum):
    LEGENDRE = "legendre"
    POLAR = "polar"
    T = "t"


class TransformSettings(BaseSchema):
    """Output grid and tolerance model of the transform comparisons."""

    out_scale: float = Field(default=0.5, gt=0)
    out_nodes: int | None = Field(default=None, ge=3)
    levels: int = Field(default=64, ge=1)
    level_window: tuple[float, float] = (0.15, 0.9)
    rel_slack: float = Field(default=0.02, ge=0)


def dual_axes(f: GridFunction, settings: TransformSettings | None = None) -> tuple[Axis, ...]:
    """The sampled box scaled by ``out_scale``, with ``out_nodes`` nodes per axis."""
    cfg = settings or TransformSettings()
    return tuple(
        Axis(axis.lo * cfg.out_scale, axis.hi * cfg.out_scale, cfg.out_nodes or axis.count) for axis in f.axes
    )


def apply_transform(
    f: GridFunction,
    kind: TransformKind,
    out_axes: Axis | Sequence[Axis],
    rho: MonotoneMap | None = None,
) -> tuple[GridFunction, float]:
    """Evaluate a transform on ``out_axes``; the float is the boundary-maximizer share (polar only)."""
    axes = as_axes(out_axes, f.ndim)
    if kind is TransformKind.LEGENDRE:
        return legendre_grid(f, axes), 0.0
    if kind is TransformKind.POLAR:
        return polar_transform_detailed(f, axes)
    if rho is None:
        raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="the T-transform needs ρ")
    return t_transform(f, rho, axes), 0.0


def _closed_masses(g: GridFunction, levels: np.ndarray, measure: MeasureSpec) -> tuple[np.ndarray, np.ndarray]:
    """μ({g ≤ λ}) and the layer bound, via the strict sublevel set just above λ."""
    return level_masses(g, np.nextafter(levels, np.inf), measure)


def transform_comparison_check(
    f: GridFunction,
    kind: TransformKind | str,
    levels: Sequence[float] | None = None,
    *,
    rho: MonotoneMap | None = None,
    settings: TransformSettings | None = None,
) -> TransformReport:
    """|{Af ≤ λ}| ≤ |{Af_* ≤ λ}| + slack at every λ.

    The slack is the sum of both one-cell-layer bounds plus ``rel_slack``
    times the larger mass. For the polar transform the node-wise identity
    {f° ≤ λ} = λ{Lf ≤ 1/λ} is cross-checked on a subsample of the levels.

    Raises:
        SantaloError: ``precondition_failed`` for f outside the geometric convex class.
    """
    cfg = settings or TransformSettings()
    transform = TransformKind(kind)
    if transform is TransformKind.T and rho is None:
        raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="the T-transform needs ρ")
    require_geometric_convex(f)
    measure = MeasureSpec.lebesgue(f.ndim)
    rearranged = increasing_rearrangement(f, measure)
    axes = dual_axes(f, cfg)
    af, fraction = apply_transform(f, transform, axes, rho)
    ar, fraction_r = apply_transform(rearranged, transform, axes, rho)
    cap = min(af.boundary_min(), ar.boundary_min())
    if levels is None:
        if not np.isfinite(cap) or cap <= 0:
            raise SantaloError(
                code=ErrorCode.PRECONDITION_FAILED,
                message="transforms have no positive finite boundary level on the dual box",
                details={"cap": cap},
            )
        low, high = cfg.level_window
        grid = np.linspace(low * cap, high * cap, cfg.levels)
    else:
        grid = np.asarray(levels, dtype=float)
        grid = grid[grid < cap]

    mass_f, err_f = _closed_masses(af, grid, measure)
    mass_r, err_r = _closed_masses(ar, grid, measure)
    rows = []
    for level, mf, mr, ef, er in zip(grid, mass_f, mass_r, err_f, err_r, strict=True):
        slack = float(ef + er) + cfg.rel_slack * float(max(mf, mr))
        rows.append(
            ComparisonRow(
                level=float(level),
                mass_lhs=float(mf),
                mass_rhs=float(mr),
                slack=slack,
                verdict=bool(mf <= mr + slack),
            )
        )

    details: dict[str, object] = {"level_cap": cap, "rearranged_boundary_fraction": fraction_r}
    passed: bool | None = None
    if transform is TransformKind.POLAR and grid.size:
        identity = polar_level_identity_nodes(f, af, grid[:: max(1, grid.size // 8)])
        details["identity_mismatches"] = identity
        passed = identity == 0

    report = TransformReport(
        check=f"transform_comparison_{transform.value}",
        transform=transform.value if rho is None else f"t({rho.name})",
        measure=measure.label,
        slack_model=f"layer bounds + {cfg.rel_slack:g} relative",
        boundary_fraction=fraction,
        rows=rows,
        passed=passed,
        details=details,
    )
    logger.debug("transform_comparison kind=%s levels=%s verdict=%s", transform.value, grid.size, report.verdict)
    return report


def polar_level_identity_nodes(f: GridFunction, polar: GridFunction, levels: np.ndarray) -> int:
    """Nodes where {f° ≤ λ} and {x : Lf(x/λ) ≤ 1/λ} disagree away from ties."""
    points = grid_points(polar.axes)
    values = polar.values.ravel()
    mismatched = 0
    for level in levels:
        if level <= 0:
            continue
        lhs = values <= level
        rhs = legendre_at(f, points / level) <= 1.0 / level
        tie = np.abs(values - level) <= TIE_RTOL * max(1.0, float(level))
        mismatched += int(np.count_nonzero((lhs ^ rhs) & ~tie))
    return mismatched


def polar_level_identity_check(
    f: GridFunction,
    levels: Sequence[float] | None = None,
    *,
    count: int = 16,
    settings: TransformSettings | None = None,
) -> TransformReport:
    """{f° ≤ λ} = λ{Lf ≤ 1/λ} node-wise, and |{f° ≤ λ}| = λⁿ|{Lf ≤ 1/λ}| in mass.

    The mass identity uses Lf on its own grid, so it holds within the layer
    bounds and the relative slack.

    Raises:
        SantaloError: ``precondition_failed`` when no level keeps both sublevel sets inside the box.
    """
    cfg = settings or TransformSettings()
    require_geometric_convex(f)
    measure = MeasureSpec.lebesgue(f.ndim)
    axes = dual_axes(f, cfg)
    polar, _ = polar_transform_detailed(f, axes)
    conjugate = legendre_grid(f, axes)
    high = polar.boundary_min()
    low = 1.0 / conjugate.boundary_min()
    if levels is None:
        if not low * 1.1 < high * 0.9:
            raise SantaloError(
                code=ErrorCode.PRECONDITION_FAILED,
                message="no level keeps both sublevel sets inside the dual box",
                details={"low": low, "high": high},
            )
        grid = np.geomspace(low * 1.1, high * 0.9, count)
    else:
        grid = np.asarray(levels, dtype=float)

    mass_p, err_p = _closed_masses(polar, grid, measure)
    mass_l, err_l = _closed_masses(conjugate, 1.0 / grid, measure)
    power = grid**f.ndim
    rows = []
    for level, mp, ml, ep, el, scale in zip(grid, mass_p, mass_l, err_p, err_l, power, strict=True):
        scaled = float(scale * ml)
        slack = float(ep + scale * el) + cfg.rel_slack * max(float(mp), scaled)
        rows.append(
            ComparisonRow(
                level=float(level),
                mass_lhs=float(mp),
                mass_rhs=scaled,
                slack=slack,
                verdict=bool(abs(mp - scaled) <= slack),
            )
        )
    mismatches = polar_level_identity_nodes(f, polar, grid)
    return TransformReport(
        check="polar_level_identity",
        transform=TransformKind.POLAR.value,
        measure=measure.label,
        slack_model=f"layer bounds + {cfg.rel_slack:g} relative",
        rows=rows,
        passed=mismatches == 0,
        details={"node_mismatches": mismatches},
    )


def biconjugation_check(
    f: GridFunction,
    slope_axes: Axis | Sequence[Axis] | None = None,
    tol: float | None = None,
) -> Report:
    """LLf = f at nodes whose gradient lies well inside the slope box, and LLf ≤ f everywhere.

    The default tolerance is (hδ + δ²)/2 per dimension for node spacing h and
    slope spacing δ, which bounds the discrete biconjugate of a strongly convex
    sample with unit modulus.
    """
    slopes = f.axes if slope_axes is None else as_axes(slope_axes, f.ndim)
    biconjugate = legendre_grid(legendre_grid(f, slopes), f.axes)
    finite = f.finite_mask
    reachable = finite.copy()
    for axis_index, (axis, slope) in enumerate(zip(f.axes, slopes, strict=True)):
        with np.errstate(invalid="ignore"):
            gradient = np.gradient(np.where(finite, f.values, np.nan), axis.step, axis=axis_index)
        reachable &= (gradient >= 0.9 * slope.lo) & (gradient <= 0.9 * slope.hi)
    below = bool(np.all(biconjugate.values[finite] <= f.values[finite] + 1e-9 * (1.0 + np.abs(f.values[finite]))))
    deviation = float(np.max(np.abs(biconjugate.values - f.values)[reachable])) if reachable.any() else 0.0
    delta = max(axis.step for axis in slopes)
    limit = tol if tol is not None else 0.5 * f.ndim * (max(f.steps) * delta + delta * delta) + 1e-9
    return Report(
        check="biconjugation",
        passed=below and deviation <= limit,
        details={"max_deviation": deviation, "tolerance": limit, "nodes": int(reachable.sum()), "below": below},
    )


def order_reversal_check(
    f: GridFunction,
    g: GridFunction,
    out_axes: Axis | Sequence[Axis] | None = None,
) -> Report:
    """f ≤ g node-wise implies Lg ≤ Lf node-wise on a shared slope grid.

    Raises:
        SantaloError: ``precondition_failed`` when f ≤ g fails or the grids differ.
    """
    if f.axes != g.axes:
        raise SantaloError(code=ErrorCode.PRECONDITION_FAILED, message="order reversal needs a shared grid")
    if np.any(f.values > g.values):
        raise SantaloError(code=ErrorCode.PRECONDITION_FAILED, message="order reversal needs f ≤ g node-wise")
    lf = legendre_grid(f, out_axes)
    lg = legendre_grid(g, out_axes)
    violations = int(np.count_nonzero(lg.values > lf.values))
    return Report(check="order_reversal", passed=violations == 0, details={"violations": violations})
