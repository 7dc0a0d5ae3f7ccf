"""
Zero-frequency solves of the spherically symmetric problem.

For l = 0 the static equation is -(1/r^2) d/dr (r^2 (1 - 2m/r) du/dr) = f. With the bounded solution at the
horizon (or the centre) and u -> 0 at infinity:

    I(r) = int_{2m}^r f s^2 ds,    r^2 (1 - 2m/r) du/dr = -I

Both are integrated in y = log(r - 2m), where dI/dy = f r^2 delta and du/dy = -I / r with delta = r - 2m. The
outer boundary value comes from the exact tail

    u(R) = I(R) L(R) + int_R^inf f s^2 L(s) ds,    L(s) = int_s^inf dr / (r (r - 2m)) = -log(1 - 2m/s) / 2m
"""
import logging
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from scipy.integrate import quad, solve_ivp

from pricetail.background.extended_state import solve_extended_state
from pricetail.background.specs import BackgroundSpec, Mode
from pricetail.evolve.constants import tail_pairing
from pricetail.exceptions import ComputeError, UnsupportedBackground, ZeroEnergyMismatch
from pricetail.profiles import RadialProfile
from pricetail.spectral.homogeneous import MAX_STEP, source_max_step

logger = logging.getLogger(__name__)

OUTER_RADIUS = 1e6
START_DISTANCE = 1e-10
FIT_WINDOW = (1e3, 1e4)
FIT_SAMPLES = 200
MISMATCH_TOLERANCE = 0.01
RTOL = 1e-12
ATOL = 1e-40

SourceOfY = Callable[[float], complex]


def tail_kernel(spec: BackgroundSpec, s: np.ndarray) -> np.ndarray:
    """ L(s) = int_s^inf dr / (r (r - 2m)) """
    s = np.asarray(s, dtype=float)
    if spec.mass == 0.0 or not spec.is_schwarzschild:
        return 1.0 / s
    two_m = 2.0 * spec.mass
    return -np.log1p(-two_m / s) / two_m


@dataclass(frozen=True)
class StaticSolution:
    """ I and u of one static solve as dense functions of y = log(r - 2m) """
    background: BackgroundSpec
    y_start: float
    y_end: float
    solution: object

    def radius(self, y: np.ndarray) -> np.ndarray:
        return self.background.horizon + np.exp(y)

    def of_radius(self, r: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """ I(r) and u(r); constant continuation below the start of the solve """
        y = np.clip(np.log(np.asarray(r, dtype=float) - self.background.horizon), self.y_start, self.y_end)
        values = self.solution.sol(y)  # type: ignore
        return values[0], values[1]

    def of_y(self, y: float) -> Tuple[complex, complex]:
        values = self.solution.sol(y)  # type: ignore
        return complex(values[0]), complex(values[1])


def static_solve(spec: BackgroundSpec, source: SourceOfY, tail_integral: complex,
                 outer_radius: float = OUTER_RADIUS, max_step: float = MAX_STEP) -> StaticSolution:
    """
    Solve the l = 0 static equation with a source given as a function of y.

    Args:
        spec: the background
        source: f as a function of y = log(r - 2m)
        tail_integral: int_R^inf f s^2 L(s) ds beyond the outer radius
        outer_radius: R
        max_step: bound on the step in y, small enough to resolve the support of the source

    Returns:
        StaticSolution covering [START_DISTANCE, R - 2m] in horizon distance
    """
    y_start = float(np.log(START_DISTANCE))
    y_end = float(np.log(outer_radius - spec.horizon))

    def moment(y: float, state: np.ndarray) -> np.ndarray:
        delta = np.exp(y)
        r = spec.horizon + delta
        return np.array([source(y) * r * r * delta])

    first = solve_ivp(moment, (y_start, y_end), np.array([0.0j]), method="DOP853", rtol=RTOL, atol=ATOL,
                      max_step=max_step)
    if not first.success:
        raise ComputeError(f"Static moment integration failed: {first.message}")
    moment_at_end = complex(first.y[0, -1])
    u_end = moment_at_end * float(tail_kernel(spec, np.array([outer_radius]))[0]) + tail_integral

    def system(y: float, state: np.ndarray) -> np.ndarray:
        delta = np.exp(y)
        r = spec.horizon + delta
        return np.array([source(y) * r * r * delta, -state[0] / r])

    second = solve_ivp(system, (y_end, y_start), np.array([moment_at_end, u_end]), method="DOP853", rtol=RTOL,
                       atol=ATOL, max_step=max_step, dense_output=True)
    if not second.success:
        raise ComputeError(f"Static field integration failed: {second.message}")
    return StaticSolution(background=spec, y_start=y_start, y_end=y_end, solution=second)


@dataclass(frozen=True)
class ZeroEnergySolution:
    """ u0 = R(0) f with its far-field constant c0, computed two ways """
    profile: RadialProfile
    static: StaticSolution
    radii: np.ndarray
    values: np.ndarray
    c0: float
    c0_tail: float
    subleading: float

    def __call__(self, r: np.ndarray) -> np.ndarray:
        return np.real(self.static.of_radius(r)[1])


def check_zero_energy_background(spec: BackgroundSpec, mode: Mode) -> None:
    if mode.l != 0:
        raise UnsupportedBackground(f"zero-energy solve for l = {mode.l}", spec.kind.value)
    if not spec.is_schwarzschild and spec.potential is not None and spec.potential.amplitude != 0.0:
        raise UnsupportedBackground("zero-energy solve with a potential", spec.kind.value)


def _profile_tail(spec: BackgroundSpec, profile: RadialProfile, radius: float) -> float:
    lower, upper = profile.support
    if upper <= radius:
        return 0.0
    value, _ = quad(lambda s: float(profile(np.array([s]))[0] * s * s * tail_kernel(spec, np.array([s]))[0]),
                    max(radius, lower), np.inf, epsabs=0.0, epsrel=1e-12, limit=200)
    return float(value)


def far_field_fit(static: StaticSolution, window: Tuple[float, float] = FIT_WINDOW) -> Tuple[complex, complex]:
    """ least squares u r = c + d / r over the window """
    r = np.geomspace(window[0], window[1], FIT_SAMPLES)
    _, u = static.of_radius(r)
    matrix = np.column_stack([np.ones_like(r), 1.0 / r]).astype(complex)
    solution, _, _, _ = np.linalg.lstsq(matrix, u * r, rcond=None)
    return complex(solution[0]), complex(solution[1])


def zero_energy_solve(spec: BackgroundSpec, profile: RadialProfile, mode: Mode = Mode(),
                      outer_radius: float = OUTER_RADIUS) -> ZeroEnergySolution:
    """
    Solve the static problem for f and extract c0 = lim u0 r.

    Args:
        spec: Schwarzschild, or a flat background without potential
        profile: the radial source
        mode: must be l = 0
        outer_radius: R

    Returns:
        ZeroEnergySolution; c0 is the quadrature int f r^2 dr, c0_tail the fit of u0 r = c + d/r on
        1e3 <= r <= 1e4 and subleading the fitted d (m c0 on Schwarzschild)

    Raises:
        UnsupportedBackground for l != 0 or a flat background with a potential
        ZeroEnergyMismatch when quadrature and fit differ by more than 1%
    """
    check_zero_energy_background(spec, mode)

    def source(y: float) -> complex:
        return complex(profile(np.array([spec.horizon + np.exp(y)]))[0])

    static = static_solve(spec, source, _profile_tail(spec, profile, outer_radius), outer_radius,
                          source_max_step(spec, profile.support))
    c0 = tail_pairing(spec, solve_extended_state(spec), profile, False)
    fitted, subleading = far_field_fit(static)
    c0_tail = float(np.real(fitted))
    logger.info("Zero-energy constant: quadrature %.12g, far-field fit %.12g", c0, c0_tail)
    if abs(c0_tail - c0) > MISMATCH_TOLERANCE * max(abs(c0), 1e-300):
        raise ZeroEnergyMismatch(c0, c0_tail)
    radii = spec.horizon + np.geomspace(1e-3, outer_radius / 10, 400)
    return ZeroEnergySolution(profile=profile, static=static, radii=radii,
                              values=np.real(static.of_radius(radii)[1]), c0=c0, c0_tail=c0_tail,
                              subleading=float(np.real(subleading)))
