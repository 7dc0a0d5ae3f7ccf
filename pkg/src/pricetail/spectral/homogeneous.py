"""
Homogeneous solutions of the stationary mode equation at frequency sigma,

    -psi'' + (V_l - sigma^2) psi = 0,    ' = d/dr*

integrated in y = log(r - 2m) (y = log r on flat backgrounds), where dr*/dy = r and the horizon side
is resolved without cancellation. With chi = psi':

    d psi / dy = r chi,    d chi / dy = r (V_l - sigma^2) psi

The left solution is ingoing at the horizon (psi ~ exp(-i sigma r*)) or regular at the centre
(psi ~ r^(l+1)); the right solution is outgoing, psi ~ exp(i sigma r*) sum_k a_k r^-k, started at R_out
from the asymptotic series. An optional source s(r*) is integrated alongside as int psi s dr*; the step in y
is then bounded by source_max_step so that a compactly supported source is never stepped over.
"""
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from pricetail.background.chart import RadialChart
from pricetail.background.specs import BackgroundSpec, Mode
from pricetail.exceptions import ComputeError, ResonanceDetected, WronskianDrift

logger = logging.getLogger(__name__)

SERIES_ORDER = 6
LEFT_TORTOISE = -60.0
CENTRE_RADIUS = 1e-5
WRONSKIAN_TOLERANCE = 1e-8
RESONANCE_TOLERANCE = 1e-10
SERIES_WARNING = 1e-10
RTOL = 1e-13
ATOL = 1e-30
MAX_STEP = 0.05
SUPPORT_STEPS = 32
MIN_DISTANCE = 1e-10

ComplexSource = Callable[[float], complex]


def radius_of(spec: BackgroundSpec, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """ r, the lapse 1 - 2m/r and r* at log horizon distance y """
    delta = np.exp(y)
    r = spec.horizon + delta
    if spec.is_schwarzschild:
        return r, delta / r, r + 2.0 * spec.mass * y
    return r, np.ones_like(r), r


def source_max_step(spec: BackgroundSpec, support: Tuple[float, float]) -> float:
    """ Largest step in y = log(r - 2m) that puts at least SUPPORT_STEPS steps across a radial support """
    lower, upper = support
    if not np.isfinite(upper) or upper <= spec.horizon:
        return MAX_STEP
    span = np.log(upper - spec.horizon) - np.log(max(lower - spec.horizon, MIN_DISTANCE))
    return float(min(MAX_STEP, span / SUPPORT_STEPS))


def potential_of(spec: BackgroundSpec, mode: Mode, r: np.ndarray, lapse: np.ndarray) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if spec.is_schwarzschild:
        return lapse * (mode.eigenvalue / r ** 2 + 2.0 * spec.mass / r ** 3)
    return mode.eigenvalue / r ** 2 + spec.potential_values(r)


def series_coefficients(spec: BackgroundSpec, mode: Mode, sigma: float, order: int = SERIES_ORDER) -> List[complex]:
    """
    Coefficients a_0..a_order of the outgoing expansion psi = exp(i sigma r*) sum a_k r^-k, a_0 = 1, from

        -2 i sigma (n+1) a_{n+1} + [n(n+1) - l(l+1)] a_n - 2m (n^2 - 1) a_{n-1} - sum_{q>=3} p_q a_{n+2-q} = 0

    where p_q is the r^-q coefficient of V_l / (1 - 2m/r) without the centrifugal term.
    """
    if spec.is_schwarzschild:
        p = [0.0] * (order + 3)
        p[3] = 2.0 * spec.mass
    elif spec.potential is not None:
        p = spec.potential.series_coefficients(order + 2)
    else:
        p = [0.0] * (order + 3)
    a: List[complex] = [1.0 + 0.0j]
    for n in range(order):
        total = (n * (n + 1) - mode.eigenvalue) * a[n]
        if n >= 1:
            total -= 2.0 * spec.mass * (n * n - 1) * a[n - 1]
        for q in range(3, n + 3):
            if q < len(p):
                total -= p[q] * a[n + 2 - q]
        a.append(total / (2.0j * sigma * (n + 1)))
    return a


def outgoing_start(spec: BackgroundSpec, mode: Mode, sigma: float, radius: float,
                   order: int = SERIES_ORDER) -> Tuple[complex, complex, float]:
    """ psi and psi' of the outgoing solution at radius, and the order (K-1 vs K) discrepancy of psi """
    a = np.array(series_coefficients(spec, mode, sigma, order))
    powers = radius ** -np.arange(order + 1, dtype=float)
    lapse = 1.0 - 2.0 * spec.mass / radius
    x = radius + 2.0 * spec.mass * np.log(radius - 2.0 * spec.mass) if spec.is_schwarzschild else radius
    phase = np.exp(1j * sigma * x)
    w = np.sum(a * powers)
    dw = np.sum(-np.arange(order + 1) * a * powers) / radius
    psi = phase * w
    chi = phase * (1j * sigma * w + lapse * dw)
    error = float(abs(a[-1] * powers[-1]) / abs(w))
    return psi, chi, error


def _rhs(spec: BackgroundSpec, mode: Mode, sigma: float,
         source: Optional[ComplexSource]) -> Callable[[float, np.ndarray], np.ndarray]:
    def rhs(y: float, state: np.ndarray) -> np.ndarray:
        r, lapse, _ = radius_of(spec, np.array([y]))
        potential = float(potential_of(spec, mode, r, lapse)[0])
        radius = float(r[0])
        derivative = np.array([radius * state[1], radius * (potential - sigma * sigma) * state[0], 0.0j])
        if source is not None:
            derivative[2] = state[0] * source(y) * radius
        return derivative
    return rhs


@dataclass(frozen=True)
class HomogeneousPair:
    """ The left and right solutions of one frequency, as dense ODE solutions in y """
    background: BackgroundSpec
    mode: Mode
    sigma: float
    y_left: float
    y_right: float
    left: object
    right: object
    wronskian: complex
    drift: float
    series_error: float

    @property
    def outer_radius(self) -> float:
        return float(self.background.horizon + np.exp(self.y_right))

    def left_values(self, y: np.ndarray) -> np.ndarray:
        """ rows psi, psi', int psi s dr* (from the left end) """
        return self.left.sol(y)  # type: ignore

    def right_values(self, y: np.ndarray) -> np.ndarray:
        """ rows psi, psi', int psi s dr* (from R_out, so minus the integral to R_out) """
        return self.right.sol(y)  # type: ignore


def _left_start(spec: BackgroundSpec, mode: Mode, sigma: float, x_left: float) -> Tuple[float, np.ndarray]:
    if spec.is_schwarzschild:
        y = float(np.log(RadialChart(spec.mass).horizon_distance(x_left)))
        _, _, x = radius_of(spec, np.array([y]))
        psi = np.exp(-1j * sigma * x[0])
        return y, np.array([psi, -1j * sigma * psi, 0.0j])
    r0 = CENTRE_RADIUS
    power = mode.l + 1
    return float(np.log(r0)), np.array([r0 ** power + 0.0j, power * r0 ** (power - 1) + 0.0j, 0.0j])


def homogeneous_solutions(spec: BackgroundSpec, mode: Mode, sigma: float, outer_radius: Optional[float] = None,
                          x_left: float = LEFT_TORTOISE, source: Optional[ComplexSource] = None,
                          order: int = SERIES_ORDER, max_step: float = MAX_STEP) -> HomogeneousPair:
    """
    The ingoing/regular and outgoing solutions at frequency sigma and their Wronskian.

    Args:
        spec: the background
        mode: the harmonic degree
        sigma: the frequency, > 0
        outer_radius: R_out (default max(50, 30/sigma))
        x_left: r* of the left end on Schwarzschild
        source: s as a function of y, integrated alongside
        order: order K of the outgoing series
        max_step: bound on the step in y when a source is present

    Returns:
        HomogeneousPair with W = psi_L psi_R' - psi_L' psi_R

    Raises:
        WronskianDrift when W varies by more than 1e-8 relative across the domain
        ResonanceDetected when W (nearly) vanishes
    """
    if sigma <= 0.0:
        raise ComputeError(f"Frequency must be positive, got {sigma}")
    radius = outer_radius if outer_radius is not None else max(50.0, 30.0 / sigma)
    y_left, left_state = _left_start(spec, mode, sigma, x_left)
    y_right = float(np.log(radius - spec.horizon)) if radius > spec.horizon else -np.inf
    if y_right <= y_left:
        raise ComputeError(f"Outer radius {radius} is inside the left end of the domain")

    psi, chi, series_error = outgoing_start(spec, mode, sigma, radius, order)
    if series_error > SERIES_WARNING:
        logger.warning("Outgoing series at sigma = %g, R = %g: order %d term is %.2e of the sum",
                       sigma, radius, order, series_error)
    rhs = _rhs(spec, mode, sigma, source)
    step = max_step if source is not None else np.inf
    left = solve_ivp(rhs, (y_left, y_right), left_state, method="DOP853", rtol=RTOL, atol=ATOL, max_step=step,
                     dense_output=True)
    right = solve_ivp(rhs, (y_right, y_left), np.array([psi, chi, 0.0j]), method="DOP853", rtol=RTOL, atol=ATOL,
                      max_step=step, dense_output=True)
    if not left.success or not right.success:
        raise ComputeError(f"Homogeneous solve at sigma = {sigma} failed: {left.message} / {right.message}")

    nodes = np.linspace(y_left, y_right, 65)
    lv, rv = left.sol(nodes), right.sol(nodes)
    wronskians = lv[0] * rv[1] - lv[1] * rv[0]
    reference = wronskians[32]
    scale = float(np.max(np.abs(lv[0] * rv[1])) + np.max(np.abs(lv[1] * rv[0])))
    if abs(reference) < RESONANCE_TOLERANCE * scale:
        raise ResonanceDetected(sigma, abs(reference))
    drift = float(np.max(np.abs(wronskians - reference)) / abs(reference))
    logger.debug("sigma = %g: W = %s, drift %.2e", sigma, reference, drift)
    if drift > WRONSKIAN_TOLERANCE:
        raise WronskianDrift(sigma, drift)
    return HomogeneousPair(background=spec, mode=mode, sigma=sigma, y_left=y_left, y_right=y_right, left=left,
                           right=right, wronskian=complex(reference), drift=drift, series_error=series_error)
