"""Radial profiles Ψ: [0, ∞) → [0, ∞] with Ψ(0) = 0.

``ConvexProfile`` is piecewise linear between knots and continues with a
terminal slope past the last knot (``inf`` terminal slope means Ψ = +∞ there).
``QuadraticProfile`` is the closed-form c·r²/2 used as the Gaussian reference.
Both expose exact Legendre and polar duals and exact radial masses.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from math import comb, factorial, gamma
from typing import Protocol, runtime_checkable

import numpy as np
from scipy.special import gammainc

from santalo.commons.schema.errors import ErrorCode, SantaloError

SLOPE_TOL = 1e-9
KNOT_MERGE_TOL = 1e-12


@runtime_checkable
class RadialProfile(Protocol):
    """What the flow, extremizer and product functional need from a profile."""

    @property
    def breakpoints(self) -> np.ndarray: ...

    def __call__(self, r: np.ndarray | float) -> np.ndarray: ...

    def scaled(self, factor: float) -> "RadialProfile": ...

    def legendre_dual(self) -> "RadialProfile": ...

    def polar_dual(self) -> "RadialProfile": ...


def _invalid(message: str, **details: object) -> SantaloError:
    return SantaloError(code=ErrorCode.VALIDATION_ERROR, message=message, details=dict(details) or None)


@dataclass(frozen=True, eq=False)
class ConvexProfile:
    """Piecewise-linear convex nondecreasing profile.

    Attributes:
        knots: Radii ``0 = r_0 < r_1 < ... < r_K``.
        values: ``Ψ(r_i)`` with ``Ψ(0) = 0``.
        terminal_slope: Slope past ``r_K``; ``inf`` means Ψ = +∞ beyond the last knot.
    """

    knots: np.ndarray
    values: np.ndarray
    terminal_slope: float

    def __post_init__(self) -> None:
        knots = np.asarray(self.knots, dtype=float).ravel().copy()
        values = np.asarray(self.values, dtype=float).ravel().copy()
        terminal = float(self.terminal_slope)
        if knots.size == 0 or knots.size != values.size:
            raise _invalid("knots and values must be non-empty and of equal length")
        if not (np.isfinite(knots).all() and np.isfinite(values).all()):
            raise _invalid("knots and values must be finite")
        if knots[0] != 0.0 or values[0] != 0.0:
            raise _invalid("profile must start at Ψ(0) = 0", first_knot=knots[0], first_value=values[0])
        if np.any(np.diff(knots) <= 0):
            raise _invalid("knot radii must be strictly increasing")
        if np.any(values < 0):
            raise _invalid("profile values must be nonnegative")
        if np.isnan(terminal) or terminal <= 0:
            raise _invalid("terminal slope must be positive", terminal_slope=terminal)
        slopes = np.diff(values) / np.diff(knots)
        scale = 1.0 + np.abs(slopes)
        if slopes.size and slopes[0] < -SLOPE_TOL:
            raise _invalid("profile must be nondecreasing")
        if np.any(np.diff(slopes) < -SLOPE_TOL * scale[1:]):
            raise _invalid("chord slopes must be nondecreasing (convexity)")
        if slopes.size and terminal < slopes[-1] - SLOPE_TOL * scale[-1]:
            raise _invalid(
                "terminal slope is below the last chord slope",
                terminal_slope=terminal,
                last_slope=float(slopes[-1]),
            )
        knots.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "terminal_slope", terminal)

    @classmethod
    def linear(cls, slope: float) -> "ConvexProfile":
        """Ψ(r) = slope·r."""
        return cls(np.array([0.0]), np.array([0.0]), slope)

    @classmethod
    def from_slopes(
        cls,
        knots: Sequence[float] | np.ndarray,
        slopes: Sequence[float] | np.ndarray,
        terminal_slope: float,
    ) -> "ConvexProfile":
        """Build from knot radii and the chord slope on each piece."""
        knots_arr = np.asarray(knots, dtype=float)
        slopes_arr = np.asarray(slopes, dtype=float)
        if slopes_arr.size != knots_arr.size - 1:
            raise _invalid("need one slope per piece", knots=knots_arr.size, slopes=slopes_arr.size)
        values = np.concatenate([[0.0], np.cumsum(slopes_arr * np.diff(knots_arr))])
        return cls(knots_arr, values, terminal_slope)

    @classmethod
    def sampled(
        cls,
        fn: Callable[[np.ndarray], np.ndarray],
        knots: Sequence[float] | np.ndarray,
        terminal_slope: float | None = None,
    ) -> "ConvexProfile":
        """Interpolate a convex function at ``knots``.

        The terminal slope defaults to the last chord slope.
        """
        knots_arr = np.asarray(knots, dtype=float)
        values = np.asarray(fn(knots_arr), dtype=float)
        values = values - values[0]
        if terminal_slope is None:
            terminal_slope = float((values[-1] - values[-2]) / (knots_arr[-1] - knots_arr[-2]))
        return cls(knots_arr, values, terminal_slope)

    @property
    def breakpoints(self) -> np.ndarray:
        return self.knots

    @property
    def chord_slopes(self) -> np.ndarray:
        return np.diff(self.values) / np.diff(self.knots)

    @property
    def is_superlinear(self) -> bool:
        return self.terminal_slope > 0

    @property
    def domain_end(self) -> float:
        """Largest radius where Ψ is finite."""
        return float(self.knots[-1]) if np.isinf(self.terminal_slope) else np.inf

    def __call__(self, r: np.ndarray | float) -> np.ndarray:
        radii = np.asarray(r, dtype=float)
        if np.any(radii < 0):
            raise _invalid("profiles are evaluated at nonnegative radii")
        inside = np.interp(radii, self.knots, self.values)
        last_knot = self.knots[-1]
        beyond = radii > last_knot
        if np.isinf(self.terminal_slope):
            tail = np.full_like(radii, np.inf)
        else:
            tail = self.values[-1] + self.terminal_slope * (radii - last_knot)
        return np.where(beyond, tail, inside)

    def scaled(self, factor: float) -> "ConvexProfile":
        """The profile r ↦ Ψ(factor·r)."""
        if factor <= 0:
            raise _invalid("scale factor must be positive", factor=factor)
        return ConvexProfile(self.knots / factor, self.values, self.terminal_slope * factor)

    def legendre_dual(self) -> "ConvexProfile":
        """Exact LΨ(ρ) = sup_{s≥0} ρs − Ψ(s), finite on [0, terminal_slope]."""
        return upper_envelope(self.knots, -self.values, end=self.terminal_slope)

    def polar_dual(self) -> "ConvexProfile":
        """Exact Ψ°(ρ) = sup_{s>0} (ρs − 1)/Ψ(s).

        On each linear piece the ratio is monotone in s, so the supremum is a
        maximum of lines through the knots plus the behavior as s → ∞.
        """
        positive = self.values > 0
        slopes = list(self.knots[positive] / self.values[positive])
        intercepts = list(-1.0 / self.values[positive])
        if np.isinf(self.terminal_slope):
            slopes.append(0.0)
        else:
            slopes.append(1.0 / self.terminal_slope)
        intercepts.append(0.0)
        # a flat start Ψ = 0 on [0, r_z] makes Ψ° infinite past 1/r_z
        flat_end = float(self.knots[~positive].max())
        end = np.inf if flat_end == 0.0 else 1.0 / flat_end
        return upper_envelope(np.asarray(slopes), np.asarray(intercepts), end=end)

    def restricted(self, radius: float) -> "ConvexProfile":
        """Copy whose knots also include ``radius`` (same function)."""
        if radius <= 0 or radius in self.knots:
            return self
        knots = np.sort(np.append(self.knots, radius))
        return ConvexProfile(knots, self(knots), self.terminal_slope)


@dataclass(frozen=True)
class QuadraticProfile:
    """Ψ(r) = c·r²/2."""

    c: float = 1.0

    def __post_init__(self) -> None:
        if not (np.isfinite(self.c) and self.c > 0):
            raise _invalid("quadratic coefficient must be positive and finite", c=self.c)

    @property
    def breakpoints(self) -> np.ndarray:
        return np.array([0.0])

    @property
    def terminal_slope(self) -> float:
        return np.inf

    def __call__(self, r: np.ndarray | float) -> np.ndarray:
        radii = np.asarray(r, dtype=float)
        return 0.5 * self.c * radii * radii

    def derivative(self, r: np.ndarray | float) -> np.ndarray:
        return self.c * np.asarray(r, dtype=float)

    def scaled(self, factor: float) -> "QuadraticProfile":
        return QuadraticProfile(self.c * factor * factor)

    def legendre_dual(self) -> "QuadraticProfile":
        return QuadraticProfile(1.0 / self.c)

    def polar_dual(self) -> "QuadraticProfile":
        return QuadraticProfile(1.0 / self.c)


def upper_envelope(slopes: np.ndarray, intercepts: np.ndarray, end: float = np.inf) -> ConvexProfile:
    """Maximum of the lines ``a·r + b`` on ``[0, end]`` as a profile (+∞ past ``end``).

    The maximum must vanish at r = 0; the lines are those of a Legendre or
    polar dual, whose value at the origin is zero.
    """
    a = np.asarray(slopes, dtype=float)
    b = np.asarray(intercepts, dtype=float)
    hull: list[tuple[float, float]] = []
    for k in np.lexsort((b, a)):
        line = (float(a[k]), float(b[k]))
        if hull and hull[-1][0] == line[0]:
            hull.pop()
        while len(hull) >= 2:
            (a1, b1), (a2, b2) = hull[-2], hull[-1]
            a3, b3 = line
            # middle line is never strictly on top
            if (b1 - b3) * (a2 - a1) <= (b1 - b2) * (a3 - a1):
                hull.pop()
            else:
                break
        hull.append(line)

    hull_a = np.array([line[0] for line in hull])
    hull_b = np.array([line[1] for line in hull])
    crossings = (hull_b[:-1] - hull_b[1:]) / (hull_a[1:] - hull_a[:-1])
    inner = crossings[(crossings > 0) & (crossings < end)]
    knots = [0.0, *inner.tolist()]
    if np.isfinite(end):
        knots.append(float(end))
    knots_arr = _merge_close(np.asarray(knots))
    values = np.max(np.outer(knots_arr, hull_a) + hull_b, axis=1)
    values[0] = 0.0
    values = np.maximum.accumulate(np.maximum(values, 0.0))
    if np.isfinite(end):
        terminal = np.inf
    else:
        terminal = float(hull_a[-1])
    if knots_arr.size == 1 and terminal == 0.0:
        raise SantaloError(
            code=ErrorCode.PRECONDITION_FAILED,
            message="dual profile is identically zero (input is not superlinear)",
        )
    return ConvexProfile(knots_arr, values, terminal)


def _merge_close(knots: np.ndarray) -> np.ndarray:
    scale = max(1.0, float(np.abs(knots).max()))
    keep = np.concatenate([[True], np.diff(knots) > KNOT_MERGE_TOL * scale])
    merged = knots[keep]
    if merged[-1] != knots[-1]:
        merged[-1] = knots[-1]
    return merged


def _piece_moment(j: int, beta: float, length: float) -> float:
    """∫_0^length u^j e^{−βu} du."""
    if np.isinf(length):
        return factorial(j) / beta ** (j + 1)
    x = beta * length
    if x < 1e-10:
        return length ** (j + 1) / (j + 1) * (1.0 - x * (j + 1) / (j + 2))
    return float(factorial(j) / beta ** (j + 1) * gammainc(j + 1, x))


def radial_mass(profile: RadialProfile, n: int) -> float:
    """∫_0^∞ e^{−Ψ(r)} r^{n−1} dr, exact for both profile kinds.

    Args:
        profile: Superlinear profile.
        n: Dimension (power of the radial weight plus one).

    Returns:
        The radial mass; multiply by ``n·ω_n`` for the integral over ℝⁿ.
    """
    if n < 1:
        raise _invalid("dimension must be positive", n=n)
    if isinstance(profile, QuadraticProfile):
        return (2.0 / profile.c) ** (n / 2) * gamma(n / 2) / 2.0
    if not isinstance(profile, ConvexProfile):
        raise _invalid("radial_mass needs a ConvexProfile or QuadraticProfile")

    total = 0.0
    knots, values = profile.knots, profile.values
    pieces = [
        (knots[i], values[i], (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]), knots[i + 1] - knots[i])
        for i in range(knots.size - 1)
    ]
    if not np.isinf(profile.terminal_slope):
        pieces.append((knots[-1], values[-1], profile.terminal_slope, np.inf))
    for start, value, beta, length in pieces:
        weight = np.exp(-value)
        if weight == 0.0:
            continue
        piece = sum(
            comb(n - 1, j) * start ** (n - 1 - j) * _piece_moment(j, float(beta), float(length)) for j in range(n)
        )
        total += weight * piece
    return float(total)
