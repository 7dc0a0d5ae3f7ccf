"""
The radial chart r <-> r* of a background.

On Schwarzschild the tortoise coordinate is r* = r + 2m log(r - 2m). Close to the horizon r - 2m is far
below the resolution of r itself, so the chart works internally with the horizon distance
delta = r - 2m, solved for through s = log(delta):

    x = 2m + exp(s) + 2m s

which is convex and increasing in s. Newton's method started to the right of the root converges
monotonically; a bracketing solve takes over for the rare entries that do not converge.
"""
import logging
from typing import Union

import numpy as np
from scipy.optimize import brentq

from pricetail.background.specs import BackgroundSpec
from pricetail.exceptions import ChartConvergenceError, ChartDomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

MAX_ITERATIONS = 100
TOLERANCE = 1e-12


class RadialChart:
    """
    Monotone map between the areal radius r and the tortoise coordinate r*.

    For flat backgrounds the map is the identity on r > 0.
    """
    def __init__(self, mass: float) -> None:
        self.__mass = float(mass)

    @classmethod
    def for_background(cls, spec: BackgroundSpec) -> "RadialChart":
        return cls(spec.mass)

    @property
    def mass(self) -> float:
        return self.__mass

    @property
    def floor(self) -> float:
        """ The radius the chart is bounded away from """
        return 2.0 * self.__mass

    def tortoise(self, r: ArrayLike) -> ArrayLike:
        r_array = np.asarray(r, dtype=float)
        if np.any(r_array <= self.floor):
            bad = float(np.min(r_array))
            raise ChartDomainError(bad, self.floor)
        if self.__mass == 0.0:
            return _like(r, r_array.copy())
        return _like(r, r_array + 2.0 * self.__mass * np.log(r_array - 2.0 * self.__mass))

    def tortoise_of_distance(self, delta: ArrayLike) -> ArrayLike:
        """ r* as a function of the horizon distance delta = r - 2m, free of cancellation near the horizon """
        delta_array = np.asarray(delta, dtype=float)
        if self.__mass == 0.0:
            return _like(delta, delta_array.copy())
        two_m = 2.0 * self.__mass
        return _like(delta, two_m + delta_array + two_m * np.log(delta_array))

    def horizon_distance(self, x: ArrayLike) -> ArrayLike:
        """ delta = r(x) - 2m, accurate to relative round-off even where it underflows r """
        x_array = np.atleast_1d(np.asarray(x, dtype=float))
        if self.__mass == 0.0:
            if np.any(x_array <= 0.0):
                raise ChartDomainError(float(np.min(x_array)), 0.0)
            return _like(x, x_array.copy())
        log_delta = self._solve_log_distance(x_array)
        return _like(x, np.exp(log_delta))

    def inverse(self, x: ArrayLike) -> ArrayLike:
        delta = self.horizon_distance(x)
        return _like(x, self.floor + np.asarray(delta))

    def dr_dx(self, r: ArrayLike) -> ArrayLike:
        """ dr/dr* = 1 - 2m/r """
        r_array = np.asarray(r, dtype=float)
        return _like(r, 1.0 - 2.0 * self.__mass / r_array)

    def _solve_log_distance(self, x: np.ndarray) -> np.ndarray:
        two_m = 2.0 * self.__mass
        # both starting points have g(s) >= 0, the smaller one is closer to the root
        start_left = (x - two_m) / two_m
        start_right = np.log(np.maximum(x, 0.0) + two_m + 1.0)
        s = np.minimum(start_left, start_right)
        converged = np.zeros_like(x, dtype=bool)
        for _ in range(MAX_ITERATIONS):
            exp_s = np.exp(s)
            g = exp_s + two_m * s + two_m - x
            step = g / (exp_s + two_m)
            s = np.where(converged, s, s - step)
            converged |= np.abs(step) <= 4.0 * np.finfo(float).eps * np.maximum(1.0, np.abs(s))
            if np.all(converged):
                break
        residual = np.abs(np.exp(s) + two_m * s + two_m - x)
        pending = ~converged & (residual > TOLERANCE * np.maximum(1.0, np.abs(x)))
        for index in np.flatnonzero(pending):
            s[index] = self._bracketed_log_distance(float(x[index]))
        return s

    def _bracketed_log_distance(self, x: float) -> float:
        two_m = 2.0 * self.__mass
        logger.debug("Newton iteration did not settle for r* = %s, falling back to bracketing", x)

        def g(s: float) -> float:
            return float(np.exp(s) + two_m * s + two_m - x)

        upper = min((x - two_m) / two_m, float(np.log(max(x, 0.0) + two_m + 1.0)))
        lower = (x - two_m - np.exp(upper)) / two_m
        try:
            return float(brentq(g, lower - 1.0, upper + 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps,
                                maxiter=MAX_ITERATIONS))
        except (ValueError, RuntimeError):
            raise ChartConvergenceError(x, MAX_ITERATIONS) from None


def _like(template: ArrayLike, values: np.ndarray) -> ArrayLike:
    if np.ndim(template) == 0:
        return float(np.reshape(values, -1)[0])
    return values


def tortoise(r: ArrayLike, spec: BackgroundSpec) -> ArrayLike:
    """
    The tortoise coordinate r* of a radius.

    Args:
        r: radius (or array of radii) in the exterior, r > 2m (r > 0 on flat backgrounds)
        spec: the background

    Returns:
        r* = r + 2m log(r - 2m), or r itself on flat backgrounds

    Raises:
        ChartDomainError when r is not in the exterior
    """
    return RadialChart.for_background(spec).tortoise(r)


def inverse_tortoise(x: ArrayLike, spec: BackgroundSpec) -> ArrayLike:
    """
    The radius r with tortoise coordinate x.

    Args:
        x: tortoise coordinate (any real on Schwarzschild, positive on flat backgrounds)
        spec: the background

    Returns:
        r with |r*(r) - x| < 1e-12 max(1, |x|) wherever r resolves the horizon distance delta = r - 2m.
        Closer to the horizon (x below about -30 m) neighbouring doubles r are (1 + 2m/delta) eps r apart in r*,
        so the round trip holds to 1e-12 max(1, |x|) + (1 + 2m/delta) eps r; RadialChart.horizon_distance
        keeps delta itself to relative round-off there.

    Raises:
        ChartConvergenceError when neither Newton nor bracketing converges
    """
    return RadialChart.for_background(spec).inverse(x)
