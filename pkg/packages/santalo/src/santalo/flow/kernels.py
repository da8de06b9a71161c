"""Angular parts of the radial heat kernel in dimensions 1, 2 and 3.

For the heat kernel ``(4πt)^{−n/2} e^{−|x|²/4t}`` the radial projection is

    k_t(r, s) = (4πt)^{−n/2} e^{−(r−s)²/4t} · S_n(a) e^{−a},   a = rs/2t,

with ``S_n(a) = ∫_{S^{n−1}} e^{a θ₁} dθ``. This module evaluates
``log S_n(a) − a`` and the logarithmic derivative ``D = S_n'/S_n`` with its
derivative, all stable for large ``a``.
"""

import numpy as np
from scipy.special import i0e, i1e

SUPPORTED_DIMENSIONS = (1, 2, 3)
SMALL_A = 1e-3


def log_sphere_excess(a: np.ndarray, n: int) -> np.ndarray:
    """log S_n(a) − a for a ≥ 0."""
    a = np.asarray(a, dtype=float)
    if n == 1:
        return np.log1p(np.exp(-2.0 * a))
    if n == 2:
        return np.log(2.0 * np.pi * i0e(a))
    safe = np.maximum(a, SMALL_A)
    large = np.log(2.0 * np.pi) + np.log(-np.expm1(-2.0 * safe)) - np.log(safe)
    # sinh(a)/a = 1 + a²/6 + O(a⁴)
    small = np.log(4.0 * np.pi) + a * a / 6.0 - a
    return np.where(a < SMALL_A, small, large)


def log_derivative(a: np.ndarray, n: int) -> np.ndarray:
    """D(a) = S_n'(a)/S_n(a)."""
    a = np.asarray(a, dtype=float)
    if n == 1:
        return np.tanh(a)
    if n == 2:
        return i1e(a) / i0e(a)
    safe = np.maximum(a, SMALL_A)
    large = 1.0 / np.tanh(safe) - 1.0 / safe
    small = a / 3.0 - a**3 / 45.0 + 2.0 * a**5 / 945.0
    return np.where(a < SMALL_A, small, large)


def log_derivative_prime(a: np.ndarray, n: int) -> np.ndarray:
    """D'(a), the variance of θ₁ under the tilted sphere measure."""
    a = np.asarray(a, dtype=float)
    if n == 1:
        t = np.tanh(a)
        return 1.0 - t * t
    safe = np.maximum(a, SMALL_A)
    if n == 2:
        d = i1e(safe) / i0e(safe)
        large = 1.0 - d / safe - d * d
        small = 0.5 - 3.0 * a * a / 16.0
        return np.where(a < SMALL_A, small, large)
    # csch²a = 4e^{−2a}/(1 − e^{−2a})²
    csch2 = 4.0 * np.exp(-2.0 * safe) / np.expm1(-2.0 * safe) ** 2
    large = 1.0 / (safe * safe) - csch2
    small = 1.0 / 3.0 - a * a / 15.0
    return np.where(a < SMALL_A, small, large)
