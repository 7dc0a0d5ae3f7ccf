"""
Frequency-to-time identities behind the leading tail.

profile_integral evaluates the angular-ray integral whose closed form is the profile 2 pi (v + 1)/(v + 2)^2.
inverse_ft_log evaluates (2 pi)^-1 int exp(-i sigma t) sigma^k log(sigma + i0) w(sigma) d sigma for a smooth
even cutoff w, which behaves like -1/t (k = 0) and 2 t^-3 (k = 2) for large positive t and vanishes for
negative t.
"""
import logging
from enum import Enum
from typing import Callable, Tuple

import numpy as np
from scipy.integrate import quad

from pricetail.exceptions import ComputeError, QuadratureNotConverged

logger = logging.getLogger(__name__)

WINDOW_REACH = 12.0
# int_0^inf Re 2t / ((2t)^2 (t - i)) dt, the v -> 0 limit taken inside the integral
SEAM = np.pi / 4.0


class Window(str, Enum):
    GAUSSIAN = "gaussian"
    BUMP = "bump"


def profile_closed_form(v: float) -> float:
    return float(2.0 * np.pi * (v + 1.0) / (v + 2.0) ** 2)


def _profile_integrand(v: float) -> Callable[[float], float]:
    def integrand(t: float) -> float:
        return float(np.real(2.0 * (t + 1j * v) / ((2.0 * t + 1j * v) ** 2 * (t - 1j))))
    return integrand


def profile_integral(v: float) -> float:
    """
    Re int_0^inf 2 (t + i v) / ((2t + i v)^2 (t - i)) dt.

    For v = 0 the integrand loses the concentration at t ~ v/2 that carries pi/4 in the limit, so that
    contribution is added back.
    """
    if v < 0.0:
        raise ComputeError(f"The ray profile integral needs v >= 0, got {v}")
    integrand = _profile_integrand(v)
    if v == 0.0:
        value, error = quad(integrand, 0.0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200)
        if error > 1e-9:
            raise QuadratureNotConverged("the profile integral at v = 0", error)
        return float(value + SEAM)
    end = max(10.0, 4.0 * v)
    points = sorted({0.5 * v, 2.0 * v, 1.0} - {0.0})
    near, near_error = quad(integrand, 0.0, end, points=[point for point in points if point < end],
                            epsabs=1e-13, epsrel=1e-12, limit=500)
    far, far_error = quad(integrand, end, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200)
    if near_error + far_error > 1e-9:
        raise QuadratureNotConverged(f"the profile integral at v = {v}", near_error + far_error)
    return float(near + far)


def window_function(kind: Window, width: float) -> Tuple[Callable[[np.ndarray], np.ndarray], float]:
    """ The cutoff w and the frequency beyond which it is dropped """
    if kind == Window.GAUSSIAN:
        return (lambda sigma: np.exp(-0.5 * (np.asarray(sigma) / width) ** 2)), WINDOW_REACH * width

    def bump(sigma: np.ndarray) -> np.ndarray:
        s = np.asarray(sigma, dtype=float) / width
        inside = np.abs(s) < 1.0
        safe = np.where(inside, s, 0.0)
        # equal to 1 at the origin
        return np.where(inside, np.exp(1.0 - 1.0 / (1.0 - safe * safe)), 0.0)
    return bump, width


def _oscillatory(function: Callable[[float], float], lower: float, upper: float, weight: str, omega: float,
                 log_weight: bool, power: int) -> float:
    """ int_lower^upper function * (cos|sin)(omega s) [* s^power log s near 0] ds """
    if upper <= lower:
        return 0.0
    if log_weight:
        value, error = quad(lambda s: function(s) * _trig(weight, omega * s), lower, upper, weight="alg-loga",
                            wvar=(power, 0.0), epsabs=1e-17, epsrel=1e-12, limit=500)
    elif omega == 0.0:
        if weight == "sin":
            return 0.0
        value, error = quad(function, lower, upper, epsabs=1e-17, epsrel=1e-12, limit=500)
    else:
        value, error = quad(function, lower, upper, weight=weight, wvar=omega, epsabs=1e-17, epsrel=1e-12,
                            limit=500)
    if not np.isfinite(value):
        raise QuadratureNotConverged(f"the {weight} transform at omega = {omega}", error)
    return float(value)


def _trig(weight: str, argument: float) -> float:
    return float(np.cos(argument) if weight == "cos" else np.sin(argument))


def inverse_ft_log(k: int, t: float, window: Window = Window.GAUSSIAN, width: float = 0.1) -> float:
    """
    Real part of (2 pi)^-1 int exp(-i sigma t) sigma^k log(sigma + i0) w(sigma) d sigma.

    Splitting at zero, with C, S the cos/sin transforms of sigma^k log(sigma) w and C0, S0 those of
    sigma^k w over sigma > 0, the integral is (C - iS) + (-1)^k (C - pi S0 + i (S + pi C0)). The logarithmic
    endpoint is handled by an algebraic-log weighted rule on [0, min(sigma_max, 1/|t|)] and the rest by
    Fourier weighted rules.

    Args:
        k: the power of sigma, >= 0
        t: the time
        window: the cutoff family
        width: its scale

    Returns:
        The real part
    """
    if k < 0 or width <= 0.0:
        raise ComputeError(f"inverse_ft_log needs k >= 0 and width > 0, got k = {k}, width = {width}")
    cutoff, sigma_max = window_function(window, width)
    omega = abs(t)
    sign = 1.0 if t >= 0.0 else -1.0
    split = min(sigma_max, 1.0 / omega) if omega > 0.0 else sigma_max

    def smooth(s: float) -> float:
        return float(cutoff(s))

    def with_log(s: float) -> float:
        return float(s ** k * np.log(s) * cutoff(s))

    def plain(s: float) -> float:
        return float(s ** k * cutoff(s))

    c = _oscillatory(smooth, 0.0, split, "cos", omega, True, k) + _oscillatory(with_log, split, sigma_max, "cos",
                                                                               omega, False, k)
    s_log = _oscillatory(smooth, 0.0, split, "sin", omega, True, k) + _oscillatory(with_log, split, sigma_max,
                                                                                   "sin", omega, False, k)
    c0 = _oscillatory(plain, 0.0, sigma_max, "cos", omega, False, k)
    s0 = _oscillatory(plain, 0.0, sigma_max, "sin", omega, False, k)
    # sin(sigma t) is odd in t
    s_log *= sign
    s0 *= sign
    parity = -1.0 if k % 2 else 1.0
    value = complex(c, -s_log) + parity * complex(c - np.pi * s0, s_log + np.pi * c0)
    logger.debug("inverse_ft_log(k=%d, t=%g) = %.6e", k, t, value.real / (2.0 * np.pi))
    return float(value.real / (2.0 * np.pi))
