"""The Bessel semigroup acting on e^{−Ψ} for radial profiles Ψ.

``Ψ_t(r) = −log ∫₀^∞ e^{−Ψ(s)} k_t(r, s) s^{n−1} ds`` with the radial heat
kernel of :mod:`santalo.flow.kernels`. Every time is computed from the
initial profile in one shot. The input integral is a piecewise Simpson rule
whose pieces follow the knots of Ψ, so each piece integrates a smooth
function; values and both r-derivatives of Ψ_t come from the same
log-sum-exp pass as softmax moments of the log-integrand.
"""

from dataclasses import dataclass
from math import comb, factorial, sqrt

import numpy as np
from pydantic import Field
from scipy.integrate import simpson
from scipy.special import logsumexp

from santalo.commons.schema.base import BaseSchema
from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.commons.telemetry.logging import get_logger
from santalo.core.measure import unit_ball_volume
from santalo.core.profile import ConvexProfile, QuadraticProfile, RadialProfile, radial_mass
from santalo.flow.kernels import (
    SUPPORTED_DIMENSIONS,
    log_derivative,
    log_derivative_prime,
    log_sphere_excess,
)

logger = get_logger(__name__)


class FlowSettings(BaseSchema):
    """Quadrature and tolerance knobs of the flow."""

    radial_step: float = Field(default=0.01, gt=0)
    max_nodes: int = Field(default=4096, ge=16)
    output_nodes: int = Field(default=2049, ge=17)
    tail_level: float = Field(default=40.0, gt=0)
    window_sigmas: float = Field(default=8.0, gt=0)
    derivative_window: int = Field(default=3, ge=1)
    convexity_floor: float = Field(default=1e-10, gt=0)
    mass_rtol: float = Field(default=1e-5, gt=0)
    alpha_tol: float = Field(default=1e-6, ge=0)
    newton_iterations: int = Field(default=60, ge=1)
    slope_nodes: int = Field(default=401, ge=11)
    time_step: float = Field(default=1e-3, gt=0)
    chunk_entries: int = Field(default=1_000_000, ge=1024)


@dataclass(frozen=True)
class RadialSample:
    """Ψ_t and its first two r-derivatives at ``radii``."""

    radii: np.ndarray
    values: np.ndarray
    first: np.ndarray
    second: np.ndarray


@dataclass(frozen=True)
class FlowState:
    """One time of the flow.

    ``psi`` samples Ψ_t on ``radii``; ``conjugate`` samples LΨ_t on ``slopes``.
    """

    t: float
    n: int
    radii: np.ndarray
    psi: np.ndarray
    slopes: np.ndarray
    conjugate: np.ndarray
    mass: float
    alpha: float
    min_curvature: float

    @property
    def product(self) -> float:
        """(nω_n)²·m(t)·α(t), the full-space product ∫e^{−Ψ_t}·∫e^{−LΨ_t}."""
        area = self.n * unit_ball_volume(self.n)
        return float(area * area * self.mass * self.alpha)


def _require_dimension(n: int) -> None:
    if n not in SUPPORTED_DIMENSIONS:
        raise SantaloError(
            code=ErrorCode.VALIDATION_ERROR,
            message="the Bessel flow supports n ∈ {1, 2, 3}",
            details={"n": n},
        )


def _simpson_rule(breaks: np.ndarray, step: float) -> tuple[np.ndarray, np.ndarray]:
    """Composite Simpson nodes and weights, one even-count rule per piece."""
    nodes: list[np.ndarray] = []
    weights: list[np.ndarray] = []
    for lo, hi in zip(breaks[:-1], breaks[1:], strict=True):
        count = max(2, 2 * int(np.ceil((hi - lo) / (2.0 * step))))
        w = np.full(count + 1, 2.0)
        w[1::2] = 4.0
        w[0] = w[-1] = 1.0
        nodes.append(np.linspace(lo, hi, count + 1))
        weights.append(w * (hi - lo) / (3.0 * count))
    return np.concatenate(nodes), np.concatenate(weights)


class BesselFlow:
    """Ψ ↦ Ψ_t for one profile and dimension.

    Args:
        profile: Superlinear ``ConvexProfile`` or ``QuadraticProfile``.
        n: Dimension, one of 1, 2, 3.
        settings: Quadrature settings.

    Raises:
        SantaloError: ``validation_error`` for an unsupported dimension or profile kind.
    """

    def __init__(self, profile: RadialProfile, n: int, settings: FlowSettings | None = None) -> None:
        _require_dimension(n)
        self.profile = profile
        self.n = n
        self.settings = settings or FlowSettings()
        level = self.settings.tail_level
        if isinstance(profile, QuadraticProfile):
            self.terminal_slope = np.inf
            self.domain_end = np.inf
            self.tail_radius = sqrt(2.0 * level / profile.c)
            self.core_radius = self.tail_radius
            self.breaks = np.array([0.0])
        elif isinstance(profile, ConvexProfile):
            self.terminal_slope = profile.terminal_slope
            self.domain_end = profile.domain_end
            last = float(profile.knots[-1])
            self.tail_radius = last if np.isinf(self.terminal_slope) else last + level / self.terminal_slope
            # past the last knot the profile is affine and Ψ_t'' decays to zero
            self.core_radius = last
            self.breaks = np.asarray(profile.knots, dtype=float)
        else:
            raise SantaloError(
                code=ErrorCode.VALIDATION_ERROR,
                message="the Bessel flow needs a ConvexProfile or QuadraticProfile",
                details={"profile": type(profile).__name__},
            )

    # -- geometry -------------------------------------------------------------

    def radii(self, t: float) -> tuple[float, float]:
        """(R_out, R_in): the output range and the input truncation radius at time t."""
        width = self.settings.window_sigmas * sqrt(2.0 * t)
        drift = 0.0 if np.isinf(self.terminal_slope) else 2.0 * t * self.terminal_slope
        r_out = self.tail_radius + drift + width
        return r_out, r_out + width

    def output_grid(self, t: float) -> np.ndarray:
        return np.linspace(0.0, self.radii(t)[0], self.settings.output_nodes)

    def _quadrature(self, t: float) -> tuple[np.ndarray, np.ndarray]:
        """Input nodes and the t-dependent part of the log-integrand at them."""
        _, r_in = self.radii(t)
        end = min(r_in, self.domain_end)
        breaks = np.append(self.breaks[self.breaks < end], end)
        step = max(self.settings.radial_step, r_in / self.settings.max_nodes)
        nodes, weights = _simpson_rule(breaks, step)
        with np.errstate(divide="ignore"):
            base = np.log(weights) - np.asarray(self.profile(nodes), dtype=float)
            if self.n > 1:
                base += (self.n - 1) * np.log(nodes)
        base -= 0.5 * self.n * np.log(4.0 * np.pi * t)
        return nodes, base

    # -- evaluation -----------------------------------------------------------

    def sample(self, t: float, radii: np.ndarray | None = None) -> RadialSample:
        """Ψ_t, Ψ_t' and Ψ_t'' at ``radii`` (the output grid by default).

        Raises:
            SantaloError: ``validation_error`` for t ≤ 0 or negative radii.
        """
        if not t > 0:
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="flow time must be positive", details={"t": t})
        r = self.output_grid(t) if radii is None else np.atleast_1d(np.asarray(radii, dtype=float))
        if np.any(r < 0):
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="radii must be nonnegative")
        nodes, base = self._quadrature(t)
        inv = 1.0 / (2.0 * t)
        values = np.empty(r.size)
        first = np.empty(r.size)
        second = np.empty(r.size)
        rows = max(1, self.settings.chunk_entries // nodes.size)
        for start in range(0, r.size, rows):
            rr = r[start : start + rows, None]
            a = rr * nodes[None, :] * inv
            log_terms = base[None, :] - 0.5 * inv * (rr - nodes[None, :]) ** 2 + log_sphere_excess(a, self.n)
            lse = logsumexp(log_terms, axis=1, keepdims=True)
            weights = np.exp(log_terms - lse)
            d1 = -rr * inv + nodes[None, :] * inv * log_derivative(a, self.n)
            mean1 = np.sum(weights * d1, axis=1, keepdims=True)
            variance = np.sum(weights * (d1 - mean1) ** 2, axis=1)
            d2 = -inv + (nodes[None, :] * inv) ** 2 * log_derivative_prime(a, self.n)
            mean2 = np.sum(weights * d2, axis=1)
            values[start : start + rows] = -lse[:, 0]
            first[start : start + rows] = -mean1[:, 0]
            second[start : start + rows] = -mean2 - variance
        if not (np.isfinite(values).all() and np.isfinite(first).all() and np.isfinite(second).all()):
            raise SantaloError(
                code=ErrorCode.NAN_RESULT,
                message="Bessel flow produced a non-finite value",
                details={"t": t, "n": self.n},
            )
        return RadialSample(radii=r, values=values, first=first, second=second)

    def mass(self, t: float) -> float:
        """m(t) = ∫₀^∞ e^{−Ψ_t} r^{n−1} dr; exact at t = 0."""
        if t == 0:
            return radial_mass(self.profile, self.n)
        return self._mass(self.sample(t))

    def _mass(self, sample: RadialSample) -> float:
        r = sample.radii
        density = np.exp(-sample.values) * r ** (self.n - 1)
        total = float(simpson(density, x=r))
        if np.isfinite(self.terminal_slope):
            # past R_out Ψ_t grows with the terminal slope
            edge, slope = float(r[-1]), self.terminal_slope
            moments = sum(
                comb(self.n - 1, j) * edge ** (self.n - 1 - j) * factorial(j) / slope ** (j + 1) for j in range(self.n)
            )
            total += float(np.exp(-sample.values[-1])) * moments
        return total

    def alpha(self, t: float) -> float:
        """α(t) = ∫₀^∞ e^{−LΨ_t} ρ^{n−1} dρ; exact at t = 0."""
        if t == 0:
            return radial_mass(self.profile.legendre_dual(), self.n)
        return self._alpha(self.sample(t))

    def _alpha(self, sample: RadialSample) -> float:
        # ρ = Ψ_t'(s), LΨ_t(ρ) = sΨ_t'(s) − Ψ_t(s), dρ = Ψ_t''(s) ds
        s = sample.radii
        slope = np.maximum(sample.first, 0.0)
        integrand = np.exp(sample.values - s * sample.first) * slope ** (self.n - 1) * sample.second
        return float(simpson(integrand, x=s))

    def state(self, t: float) -> FlowState:
        """Sampled Ψ_t and LΨ_t with m(t) and α(t)."""
        if t < 0:
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="flow time must be nonnegative", details={"t": t})
        if t == 0:
            return self._initial_state()
        sample = self.sample(t)
        curvature = self._require_convexity(t, sample)
        state = FlowState(
            t=float(t),
            n=self.n,
            radii=sample.radii,
            psi=sample.values,
            slopes=sample.first,
            conjugate=sample.radii * sample.first - sample.values,
            mass=self._mass(sample),
            alpha=self._alpha(sample),
            min_curvature=curvature,
        )
        logger.debug("flow_state t=%s n=%s mass=%s alpha=%s", t, self.n, state.mass, state.alpha)
        return state

    def _require_convexity(self, t: float, sample: RadialSample) -> float:
        """Smallest Ψ_t'' over the radii up to the core radius.

        Raises:
            SantaloError: ``convexity_floor`` with the time and the worst radius
                when Ψ_t'' drops below ``convexity_floor`` there.
        """
        core = sample.radii <= self.core_radius
        if not core.any():
            core = sample.radii <= sample.radii.min()
        second = sample.second[core]
        worst = int(np.argmin(second))
        curvature = float(second[worst])
        if curvature < self.settings.convexity_floor:
            radius = float(sample.radii[core][worst])
            logger.warning("convexity_floor t=%s radius=%s curvature=%s", t, radius, curvature)
            raise SantaloError(
                code=ErrorCode.CONVEXITY_FLOOR,
                message="Ψ_t is not strictly convex on the sampled range",
                details={"t": t, "radius": radius, "min_curvature": curvature, "floor": self.settings.convexity_floor},
            )
        return curvature

    def _initial_state(self) -> FlowState:
        dual = self.profile.legendre_dual()
        radii = np.linspace(0.0, min(self.tail_radius, self.domain_end), self.settings.output_nodes)
        if isinstance(self.profile, QuadraticProfile):
            slopes = self.profile.derivative(radii)
        else:
            slopes = np.asarray(dual.breakpoints, dtype=float)
        return FlowState(
            t=0.0,
            n=self.n,
            radii=radii,
            psi=np.asarray(self.profile(radii), dtype=float),
            slopes=slopes,
            conjugate=np.asarray(dual(slopes), dtype=float),
            mass=radial_mass(self.profile, self.n),
            alpha=radial_mass(dual, self.n),
            min_curvature=0.0,
        )

    # -- conjugation ----------------------------------------------------------

    def max_slope(self, t: float) -> float:
        """Ψ_t'(R_out), the largest slope the sampled range attains."""
        r_out, _ = self.radii(t)
        return float(self.sample(t, np.array([r_out])).first[0])

    def inverse_slope(self, t: float, slopes: np.ndarray) -> RadialSample:
        """The sample at the radii s with Ψ_t'(s) = ρ, by safeguarded Newton steps.

        Raises:
            SantaloError: ``precondition_failed`` for slopes outside [0, Ψ_t'(R_out)).
        """
        rho = np.atleast_1d(np.asarray(slopes, dtype=float))
        r_out, _ = self.radii(t)
        coarse = self.sample(t, np.linspace(0.0, r_out, 257))
        top = float(coarse.first[-1])
        if np.any(rho < 0) or np.any(rho >= top):
            raise SantaloError(
                code=ErrorCode.PRECONDITION_FAILED,
                message="slopes must lie in [0, Ψ_t'(R_out))",
                details={"t": t, "max_slope": top, "requested": float(rho.max())},
            )
        lo = np.zeros_like(rho)
        hi = np.full_like(rho, r_out)
        s = np.interp(rho, np.maximum.accumulate(coarse.first), coarse.radii)
        for _ in range(self.settings.newton_iterations):
            sample = self.sample(t, s)
            gap = sample.first - rho
            done = np.abs(gap) <= 1e-12 * (1.0 + rho)
            if done.all():
                return sample
            hi = np.where(gap > 0, s, hi)
            lo = np.where(gap < 0, s, lo)
            with np.errstate(divide="ignore", invalid="ignore"):
                newton = s - gap / sample.second
            inside = np.isfinite(newton) & (sample.second > 0) & (newton > lo) & (newton < hi)
            s = np.where(done, s, np.where(inside, newton, 0.5 * (lo + hi)))
        logger.debug("inverse_slope_unconverged t=%s slopes=%s", t, rho.size)
        return self.sample(t, s)


def bessel_semigroup(
    profile: RadialProfile,
    t: float,
    n: int,
    radii: np.ndarray | None = None,
    settings: FlowSettings | None = None,
) -> RadialSample:
    """Ψ_t = −log P_t(e^{−Ψ}) for the heat semigroup with generator f'' + (n−1)f'/r.

    Args:
        profile: Superlinear initial profile.
        t: Positive time.
        n: Dimension, one of 1, 2, 3.
        radii: Output radii; the flow's output grid by default.
        settings: Quadrature settings.

    Returns:
        Ψ_t with its first two derivatives.

    Raises:
        SantaloError: ``validation_error`` for t ≤ 0 or n ∉ {1, 2, 3}.
    """
    return BesselFlow(profile, n, settings).sample(t, radii)
