"""Coordinate search for the radial extremizer of the product functional.

A candidate is a piecewise-linear convex profile on fixed knots over [0, R],
parameterized by nonnegative slope increments: θ_0 is the first slope,
θ_1 … θ_{K−1} the jumps between pieces and θ_K the jump to the terminal
slope. Convexity and monotonicity are then the box θ ≥ 0, and the terminal
slope is held above a floor so every integral stays finite.
"""

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Literal, cast

import numpy as np
from pydantic import Field

from santalo.commons.infra.tasks import map_ordered
from santalo.commons.schema.base import BaseSchema
from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.commons.telemetry.logging import get_logger
from santalo.core.profile import ConvexProfile, QuadraticProfile, RadialProfile, radial_mass
from santalo.core.random import rng_for
from santalo.flow.functional import DualKind, product_functional, santalo_bound

logger = get_logger(__name__)

BREACH_SLACK = 1e-4
DEFAULT_RADIUS = {1: 4.0, 2: 5.0, 3: 5.5}

InitialShape = Literal["random", "gaussian", "linear"]


class SearchConfig(BaseSchema):
    """Settings of one extremizer search (all restarts included)."""

    n: int = Field(default=1, ge=1, le=3)
    transform: DualKind = DualKind.LEGENDRE
    knots: int = Field(default=24, ge=2, le=512)
    radius: float | None = Field(default=None, gt=0)
    budget: int = Field(default=5000, ge=1)
    restarts: int = Field(default=8, ge=1)
    seed: int = Field(default=0, ge=0)
    tolerance: float = Field(default=1e-9, gt=0)
    grow: float = Field(default=1.5, ge=1.0)
    shrink: float = Field(default=0.5, gt=0.0, lt=1.0)
    terminal_floor: float = Field(default=0.05, gt=0)
    initial: InitialShape = "random"
    jitter: float = Field(default=0.3, ge=0)
    workers: int = Field(default=1, ge=1)

    @property
    def knot_radii(self) -> np.ndarray:
        return np.linspace(0.0, float(self.radius or DEFAULT_RADIUS[self.n]), self.knots + 1)


class SearchDocument(BaseSchema):
    """JSON form of a search result."""

    dimension: int
    transform: str
    seed: int
    value: float
    bound: float | None
    evaluations: int
    normalization_residual: float
    knots: list[float]
    values: list[float]
    terminal_slope: float
    history: list[float]


@dataclass(frozen=True)
class SearchResult:
    """Best normalized profile of a search and the accepted values along the way."""

    profile: ConvexProfile
    value: float
    history: list[float]
    normalization_residual: float
    seed: int
    evaluations: int
    parameters: np.ndarray = field(repr=False)

    def to_document(self, config: SearchConfig) -> SearchDocument:
        legendre = config.transform is DualKind.LEGENDRE
        return SearchDocument(
            dimension=config.n,
            transform=config.transform.value,
            seed=self.seed,
            value=self.value,
            bound=santalo_bound(config.n) if legendre else None,
            evaluations=self.evaluations,
            normalization_residual=self.normalization_residual,
            knots=self.profile.knots.tolist(),
            values=self.profile.values.tolist(),
            terminal_slope=self.profile.terminal_slope,
            history=self.history,
        )


def normalize_profile(profile: RadialProfile, n: int) -> RadialProfile:
    """Ψ(λ·) with ∫₀^∞ e^{−Ψ(λr)} r^{n−1} dr = 1, i.e. λ = m^{1/n} for the current mass m."""
    mass = radial_mass(profile, n)
    if not (np.isfinite(mass) and mass > 0):
        raise SantaloError(
            code=ErrorCode.PRECONDITION_FAILED,
            message="profile mass is not finite and positive",
            details={"mass": mass},
        )
    return profile.scaled(mass ** (1.0 / n))


def normalization_residual(profile: RadialProfile, n: int) -> float:
    return abs(radial_mass(profile, n) - 1.0)


def match_gaussian_mass(profile: RadialProfile, n: int) -> RadialProfile:
    """Ψ(λ·) with the radial mass of r²/2."""
    target = radial_mass(QuadraticProfile(1.0), n)
    return profile.scaled((radial_mass(profile, n) / target) ** (1.0 / n))


def gaussian_distance(profile: RadialProfile, n: int, radius: float = 3.0, nodes: int = 601) -> float:
    """sup |Ψ − r²/2| on [0, radius] after rescaling Ψ to the mass of r²/2."""
    matched = match_gaussian_mass(profile, n)
    r = np.linspace(0.0, radius, nodes)
    return float(np.max(np.abs(np.asarray(matched(r)) - 0.5 * r * r)))


def profile_from_parameters(theta: np.ndarray, knots: np.ndarray) -> ConvexProfile:
    pieces = knots.size - 1
    slopes = np.cumsum(theta[:pieces])
    return ConvexProfile.from_slopes(knots, slopes, float(slopes[-1] + theta[pieces]))


def _project(theta: np.ndarray, pieces: int, floor: float) -> np.ndarray:
    projected = np.maximum(theta, 0.0)
    last_slope = float(np.sum(projected[:pieces]))
    projected[pieces] = max(projected[pieces], floor - last_slope)
    return projected


def _initial_parameters(config: SearchConfig, seed: int, restart: int) -> np.ndarray:
    knots = config.knot_radii
    pieces = config.knots
    step = float(knots[1])
    rng = rng_for(seed)
    if config.initial == "random":
        theta = rng.exponential(step, size=pieces + 1)
    else:
        if config.initial == "gaussian":
            slopes = 0.5 * (knots[:-1] + knots[1:])
            terminal = float(knots[-1])
        else:
            slopes = np.ones(pieces)
            terminal = 1.0
        theta = np.concatenate([[slopes[0]], np.diff(slopes), [terminal - slopes[-1]]])
        if restart > 0:
            theta = theta * np.exp(rng.uniform(-config.jitter, config.jitter, size=theta.size))
    return _project(theta, pieces, config.terminal_floor)


def _objective(config: SearchConfig) -> Callable[[np.ndarray], float]:
    knots = config.knot_radii
    bound = santalo_bound(config.n) + BREACH_SLACK

    def value(theta: np.ndarray) -> float:
        try:
            result = product_functional(profile_from_parameters(theta, knots), config.n, config.transform)
        except SantaloError:
            return -np.inf
        if config.transform is DualKind.LEGENDRE and result > bound:
            raise SantaloError(
                code=ErrorCode.INVARIANT_BREACH,
                message="product functional exceeds (2π)^n",
                details={"value": result, "bound": santalo_bound(config.n), "n": config.n},
            )
        return result

    return value


def _coordinate_search(
    config: SearchConfig,
    theta0: np.ndarray,
    budget: int,
) -> tuple[np.ndarray, float, list[float], int]:
    """Accept a coordinate move only when it improves; grow the step on success, shrink on failure.

    Moves keep the knot radii fixed, so accepted profiles are not rescaled to unit
    mass. The product is invariant under Ψ ↦ Ψ(λ·), so ``history`` holds the
    values of the normalized profiles all the same; only the returned profile is
    normalized.
    """
    objective = _objective(config)
    pieces = config.knots
    theta = theta0.copy()
    value = objective(theta)
    history = [value]
    evaluations = 1
    steps = np.full(theta.size, float(config.knot_radii[1]))

    while evaluations < budget and steps.max() >= config.tolerance:
        for i in range(theta.size):
            improved = False
            for direction in (1.0, -1.0):
                candidate = theta.copy()
                candidate[i] += direction * steps[i]
                candidate = _project(candidate, pieces, config.terminal_floor)
                if np.array_equal(candidate, theta):
                    continue
                trial = objective(candidate)
                evaluations += 1
                if trial > value:
                    theta, value = candidate, trial
                    history.append(value)
                    improved = True
                    break
                if evaluations >= budget:
                    break
            steps[i] *= config.grow if improved else config.shrink
            if evaluations >= budget:
                break
    return theta, value, history, evaluations


def _search_once(config: SearchConfig, restart: int) -> SearchResult:
    seed = config.seed + restart
    theta, value, history, evaluations = _coordinate_search(
        config, _initial_parameters(config, seed, restart), config.budget
    )
    best = cast(ConvexProfile, normalize_profile(profile_from_parameters(theta, config.knot_radii), config.n))
    logger.debug("extremizer_restart seed=%s value=%s evaluations=%s", seed, value, evaluations)
    return SearchResult(
        profile=best,
        value=value,
        history=history,
        normalization_residual=normalization_residual(best, config.n),
        seed=seed,
        evaluations=evaluations,
        parameters=theta,
    )


def search_extremizer(config: SearchConfig) -> SearchResult:
    """Best of ``restarts`` coordinate searches, ties going to the lower seed.

    Budget exhaustion is not an error; the best profile found is returned.

    Raises:
        SantaloError: ``invariant_breach`` if a Legendre value exceeds (2π)^n + 1e−4.
    """
    results = map_ordered(lambda k: _search_once(config, k), range(config.restarts), config.workers)
    best = max(results, key=lambda result: (result.value, -result.seed))
    logger.info(
        "extremizer_search n=%s transform=%s value=%s seed=%s",
        config.n,
        config.transform.value,
        best.value,
        best.seed,
    )
    return best


def stationarity_gap(config: SearchConfig, result: SearchResult, budget: int = 400) -> float:
    """Improvement a fresh search started at the result finds within ``budget`` evaluations."""
    _, value, _, _ = _coordinate_search(config, result.parameters, budget)
    return value - result.value
