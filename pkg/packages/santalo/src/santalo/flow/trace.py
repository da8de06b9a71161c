"""Traces of the Bessel flow and the identities behind the monotonicity of α(t).

Along the flow the mass m(t) is conserved while α(t) = ∫e^{−LΨ_t}ρ^{n−1}dρ
does not decrease, so the normalized product (nω_n)²·m·α climbs towards its
Gaussian limit (2π)^n. The conjugate V = LΨ_t solves

    ∂_t V = −1/V'' + ρ² − (n−1)ρ/V'

and α'(t) is the integral of a square, which ``integrand_identity_check``
verifies pointwise.
"""

from collections.abc import Sequence
from typing import Literal

import numpy as np
from pydantic import computed_field

from santalo.commons.infra.tasks import map_ordered
from santalo.commons.schema.base import BaseSchema
from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.commons.telemetry.logging import get_logger
from santalo.core.profile import RadialProfile
from santalo.flow.functional import DualKind, santalo_bound
from santalo.flow.semigroup import BesselFlow, FlowSettings, FlowState, RadialSample
from santalo.reports import FlowRow, FlowTrace, Report

logger = get_logger(__name__)

IDENTITY_TOL = 1e-12
PRODUCT_SLACK = 1e-5
SLOPE_WINDOW = (0.1, 2.0)

ResidualKind = Literal["cordero", "log_heat", "none"]


class ResidualReport(BaseSchema):
    """Sup-norm of a PDE residual with its tolerance model."""

    equation: str
    t: float
    residual: float
    tolerance: float
    rhs_scale: float
    time_step: float
    grid_step: float
    nodes: int

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def gaussian_flow(r: np.ndarray | float, t: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Closed forms for Ψ = r²/2: Ψ_t(r) and LΨ_t(r)."""
    radii = np.asarray(r, dtype=float)
    spread = 1.0 + 2.0 * t
    shift = 0.5 * n * np.log(spread)
    return radii**2 / (2.0 * spread) + shift, spread * radii**2 / 2.0 - shift


def _time_step(t: float, dt: float | None, settings: FlowSettings) -> float:
    step = dt if dt is not None else min(settings.time_step, 0.5 * t)
    if not (step > 0 and t - step > 0):
        raise SantaloError(
            code=ErrorCode.VALIDATION_ERROR,
            message="need 0 < Δt < t",
            details={"t": t, "dt": step},
        )
    return step


def _conjugate(flow: BesselFlow, t: float, slopes: np.ndarray) -> tuple[np.ndarray, RadialSample]:
    sample = flow.inverse_slope(t, slopes)
    if np.any(sample.second <= 0):
        raise SantaloError(
            code=ErrorCode.CONVEXITY_FLOOR,
            message="Ψ_t is not strictly convex at a requested slope",
            details={"t": t, "min_curvature": float(sample.second.min())},
        )
    return slopes * sample.radii - sample.values, sample


def conjugate_flow(
    profile: RadialProfile,
    n: int,
    t: float,
    slopes: Sequence[float] | np.ndarray,
    settings: FlowSettings | None = None,
) -> RadialSample:
    """LΨ_t on a slope grid through (LΨ_t)' = (Ψ_t')⁻¹.

    Returns:
        A sample over ``slopes`` with values LΨ_t, first derivative s(ρ) and
        second derivative 1/Ψ_t''(s(ρ)).

    Raises:
        SantaloError: ``precondition_failed`` for slopes not attained on the
            sampled range; ``convexity_floor`` where Ψ_t'' ≤ 0.
    """
    flow = BesselFlow(profile, n, settings)
    rho = np.atleast_1d(np.asarray(slopes, dtype=float))
    values, sample = _conjugate(flow, t, rho)
    return RadialSample(radii=rho, values=values, first=sample.radii, second=1.0 / sample.second)


def _slope_window(flow: BesselFlow, times: Sequence[float], count: int) -> np.ndarray:
    top = min(flow.max_slope(tau) for tau in times)
    lo, hi = SLOPE_WINDOW[0], min(SLOPE_WINDOW[1], 0.8 * top)
    if not hi > 2.0 * lo:
        raise SantaloError(
            code=ErrorCode.PRECONDITION_FAILED,
            message="the flow attains too small a slope range for the conjugate equation",
            details={"max_slope": top},
        )
    return np.linspace(lo, hi, count)


def cordero_residual(
    profile: RadialProfile,
    n: int,
    t: float,
    dt: float | None = None,
    slopes: Sequence[float] | np.ndarray | None = None,
    settings: FlowSettings | None = None,
) -> ResidualReport:
    """sup |∂_tV + 1/V'' − ρ² + (n−1)ρ/V'| for V = LΨ_t on a uniform slope grid.

    ∂_tV is a central difference in t; V' and V'' are central first and second
    differences in ρ. The sup skips ``derivative_window`` nodes at each end.
    The tolerance is 1e−4 + 10·(h² + (Δt/t)²)·(1 + max|RHS|).

    Raises:
        SantaloError: ``convexity_floor`` when V'' drops below the floor;
            ``validation_error`` for Δt ≥ t or a non-uniform slope grid.
    """
    cfg = settings or FlowSettings()
    flow = BesselFlow(profile, n, cfg)
    step = _time_step(t, dt, cfg)
    times = (t - step, t, t + step)
    if slopes is None:
        rho = _slope_window(flow, times, cfg.slope_nodes)
    else:
        rho = np.asarray(slopes, dtype=float)
        gaps = np.diff(rho)
        if rho.size < 2 * cfg.derivative_window + 1 or not np.allclose(gaps, gaps[0], rtol=1e-9):
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="slopes must be a uniform grid")
    h = float(rho[1] - rho[0])
    before, now, after = (_conjugate(flow, tau, rho)[0] for tau in times)

    time_derivative = (after - before) / (2.0 * step)
    first = (now[2:] - now[:-2]) / (2.0 * h)
    second = (now[2:] - 2.0 * now[1:-1] + now[:-2]) / (h * h)
    if second.min() < cfg.convexity_floor:
        raise SantaloError(
            code=ErrorCode.CONVEXITY_FLOOR,
            message="second difference of LΨ_t fell below the convexity floor",
            details={"t": t, "min_second": float(second.min()), "floor": cfg.convexity_floor},
        )
    inner = rho[1:-1]
    rhs = -1.0 / second + inner**2 - (n - 1) * inner / first
    keep = slice(cfg.derivative_window - 1, rhs.size - (cfg.derivative_window - 1))
    gap = np.abs(time_derivative[1:-1] - rhs)[keep]
    scale = float(np.max(np.abs(rhs[keep])))
    tolerance = 1e-4 + 10.0 * (h * h + (step / t) ** 2) * (1.0 + scale)
    report = ResidualReport(
        equation="conjugate",
        t=float(t),
        residual=float(gap.max()),
        tolerance=tolerance,
        rhs_scale=scale,
        time_step=step,
        grid_step=h,
        nodes=int(gap.size),
    )
    logger.debug("cordero_residual n=%s t=%s residual=%s tolerance=%s", n, t, report.residual, tolerance)
    return report


def log_heat_residual(
    profile: RadialProfile,
    n: int,
    t: float,
    dt: float | None = None,
    radii: Sequence[float] | np.ndarray | None = None,
    settings: FlowSettings | None = None,
) -> ResidualReport:
    """sup |∂_tΨ_t − Ψ_t'' − (n−1)Ψ_t'/r + (Ψ_t')²| over positive radii.

    The r-derivatives are the exact moment derivatives of the quadrature; only
    the time derivative is a central difference. Default radii are 64 nodes on
    [0.1, min(3, R_tail)].
    """
    cfg = settings or FlowSettings()
    flow = BesselFlow(profile, n, cfg)
    step = _time_step(t, dt, cfg)
    if radii is None:
        r = np.linspace(0.1, max(0.2, min(3.0, flow.tail_radius)), 64)
    else:
        r = np.asarray(radii, dtype=float)
    if np.any(r <= 0):
        raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="log-heat residual needs positive radii")
    now = flow.sample(t, r)
    time_derivative = (flow.sample(t + step, r).values - flow.sample(t - step, r).values) / (2.0 * step)
    rhs = now.second + (n - 1) * now.first / r - now.first**2
    scale = float(np.max(np.abs(rhs)))
    return ResidualReport(
        equation="log_heat",
        t=float(t),
        residual=float(np.max(np.abs(time_derivative - rhs))),
        tolerance=1e-6 + 10.0 * (step / t) ** 2 * (1.0 + scale),
        rhs_scale=scale,
        time_step=step,
        grid_step=float(r[1] - r[0]) if r.size > 1 else 0.0,
        nodes=int(r.size),
    )


def integrand_identity_check(
    radii: np.ndarray,
    first: np.ndarray,
    second: np.ndarray,
    eps: float = 0.0,
) -> Report:
    """1/V'' − 2r/V' + r²V''/V'² = (rV'' − V')²/(V''V'²) at every node.

    ``eps`` shifts V' to V' + ε, the derivative of V + εr. The deviation is
    measured relative to the sum of the absolute left-hand terms.

    Raises:
        SantaloError: ``precondition_failed`` for V' + ε ≤ 0 or V'' ≤ 0.
    """
    r = np.asarray(radii, dtype=float)
    v1 = np.asarray(first, dtype=float) + eps
    v2 = np.asarray(second, dtype=float)
    if np.any(v1 <= 0) or np.any(v2 <= 0):
        raise SantaloError(
            code=ErrorCode.PRECONDITION_FAILED,
            message="the identity needs V' > 0 and V'' > 0",
            details={"min_first": float(v1.min()), "min_second": float(v2.min())},
        )
    terms = (1.0 / v2, 2.0 * r / v1, r * r * v2 / (v1 * v1))
    lhs = terms[0] - terms[1] + terms[2]
    rhs = (r * v2 - v1) ** 2 / (v2 * v1 * v1)
    scale = terms[0] + np.abs(terms[1]) + terms[2]
    deviation = float(np.max(np.abs(lhs - rhs) / scale))
    min_rhs = float(rhs.min())
    return Report(
        check="integrand_identity",
        passed=deviation < IDENTITY_TOL and min_rhs >= 0.0,
        details={"max_deviation": deviation, "min_rhs": min_rhs, "nodes": int(r.size), "eps": eps},
    )


def integrand_identity_from_samples(
    radii: np.ndarray,
    values: np.ndarray,
    eps: float = 0.0,
    window: int = 3,
) -> Report:
    """The identity for sampled V, with V' and V'' from second-order differences."""
    r = np.asarray(radii, dtype=float)
    v = np.asarray(values, dtype=float)
    first = np.gradient(v, r, edge_order=2)
    second = np.gradient(first, r, edge_order=2)
    keep = slice(window, r.size - window)
    return integrand_identity_check(r[keep], first[keep], second[keep], eps)


def _require_times(times: Sequence[float]) -> np.ndarray:
    grid = np.asarray(times, dtype=float)
    if grid.size == 0 or grid[0] != 0.0 or np.any(np.diff(grid) <= 0):
        raise SantaloError(
            code=ErrorCode.VALIDATION_ERROR,
            message="t-grid must start at 0 and increase strictly",
            details={"times": grid.tolist()},
        )
    return grid


def flow_trace(
    profile: RadialProfile,
    n: int,
    times: Sequence[float],
    transform: DualKind | str = DualKind.LEGENDRE,
    *,
    residual: ResidualKind = "cordero",
    settings: FlowSettings | None = None,
    workers: int = 1,
) -> FlowTrace:
    """m(t), α(t), the normalized product and a PDE residual along the t-grid.

    A row passes when m(t) stays within ``mass_rtol`` of m(0), α(t) is at
    least the previous α minus ``alpha_tol``, and the product stays below
    (2π)^n + 1e−5.

    Raises:
        SantaloError: ``unsupported_pair`` for the polar transform, which has
            no conjugate flow; ``validation_error`` for a bad t-grid;
            ``convexity_floor`` when Ψ_t'' drops below the floor at a sampled time.
    """
    if DualKind(transform) is not DualKind.LEGENDRE:
        raise SantaloError(
            code=ErrorCode.UNSUPPORTED_PAIR,
            message="the flow is defined for the Legendre transform only",
            details={"transform": DualKind(transform).value},
        )
    cfg = settings or FlowSettings()
    grid = _require_times(times)
    flow = BesselFlow(profile, n, cfg)
    states: list[FlowState] = map_ordered(flow.state, grid.tolist(), workers)

    def residual_at(t: float) -> float:
        if t == 0 or residual == "none":
            return 0.0
        if residual == "cordero":
            return cordero_residual(profile, n, t, settings=cfg).residual
        return log_heat_residual(profile, n, t, settings=cfg).residual

    residuals = map_ordered(residual_at, grid.tolist(), workers)
    bound = santalo_bound(n) + PRODUCT_SLACK
    mass0 = states[0].mass
    rows = []
    previous = -np.inf
    for state, value in zip(states, residuals, strict=True):
        conserved = abs(state.mass - mass0) <= cfg.mass_rtol * mass0
        monotone = state.alpha >= previous - cfg.alpha_tol
        rows.append(
            FlowRow(
                t=state.t,
                mass=state.mass,
                alpha=state.alpha,
                residual=float(value),
                product=state.product,
                verdict=bool(conserved and monotone and state.product <= bound),
            )
        )
        previous = state.alpha

    trace = FlowTrace(
        check="santalo_flow",
        dimension=n,
        transform=DualKind.LEGENDRE.value,
        rows=rows,
        details={
            "residual": residual,
            "bound": santalo_bound(n),
            "max_mass_drift": float(max(abs(s.mass - mass0) for s in states) / mass0),
            "final_product": states[-1].product,
            "min_curvature": float(min((s.min_curvature for s in states[1:]), default=0.0)),
        },
    )
    logger.info("flow_trace n=%s times=%s verdict=%s", n, grid.size, trace.verdict)
    return trace
