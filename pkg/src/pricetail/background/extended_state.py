"""
Zero energy (extended) states and the static kernel checks.

On a flat background with a radial potential the extended state u0 solves -Delta u0 + V u0 = 0,
u0 -> 1 at infinity, u0 regular at the origin. With psi = r u0 this is psi'' = V psi, psi(0) = 0, which is
shot outwards from the origin and normalised at the matching radius R by the slope at infinity,

    A = psi'(R) (1 + J1) + psi(R) J0,   J0 = int_R^inf V dr,   J1 = int_R^inf V (r - R) dr,

using the linear continuation of psi beyond R. A second solver (collocation) imposes the same condition
as a boundary condition and serves as an independent check.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

import numpy as np
from scipy.integrate import quad, solve_bvp, solve_ivp
from scipy.interpolate import CubicHermiteSpline

from pricetail.background.potentials import EffectivePotential
from pricetail.background.specs import BackgroundSpec, Mode
from pricetail.exceptions import ComputeError, ExtendedStateObstructed, UnsupportedBackground

logger = logging.getLogger(__name__)

DEFAULT_MATCHING_RADIUS = 2000.0
OBSTRUCTION_TOLERANCE = 1e-8
# r* window of the flat stencil residual, clear of the origin
FLAT_WINDOW = (1.0, 40.0)
FLAT_NODES = 391
_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(8)


@dataclass(frozen=True)
class ExtendedState:
    """
    The zero energy state u0 and its dual u0* = conj(u0), with pairing weight r^2.

    For Schwarzschild both are identically 1 on the exterior; for flat backgrounds u0 is tabulated as
    psi = r u0 (normalised to unit slope at infinity) on [0, matching_radius].
    """
    background: BackgroundSpec
    method: str
    radii: np.ndarray
    psi: np.ndarray
    dpsi: np.ndarray
    matching_radius: float
    residual: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "_spline", CubicHermiteSpline(self.radii, self.psi, self.dpsi))

    @property
    def is_trivial(self) -> bool:
        return self.method == "exact"

    def u0(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if self.is_trivial:
            return np.ones_like(r)
        spline = getattr(self, "_spline")
        r_match = self.matching_radius
        inside = np.minimum(r, r_match)
        psi = spline(inside)
        slope = spline(inside, 1)
        beyond = np.maximum(r - r_match, 0.0)
        psi_continued = np.where(r <= r_match, psi, self.psi[-1] + self.dpsi[-1] * beyond)
        safe_r = np.where(r > 0.0, r, 1.0)
        return np.where(r > 0.0, psi_continued / safe_r, slope)

    def u0_dual(self, r: np.ndarray) -> np.ndarray:
        return np.conj(self.u0(r))

    def psi_values(self, r: np.ndarray) -> np.ndarray:
        """ psi = r u0 at radii inside the solve domain """
        if self.is_trivial:
            return np.asarray(r, dtype=float)
        return getattr(self, "_spline")(np.asarray(r, dtype=float))

    def origin_value(self) -> float:
        return float(self.u0(np.array([0.0]))[0])

    def pairing(self, profile: Callable[[np.ndarray], np.ndarray], support: Tuple[float, float]) -> float:
        """ (4 pi)^-1 <f, u0*> = int f u0 r^2 dr over the given support """
        def integrand(r: float) -> float:
            return float(profile(np.array([r]))[0] * self.u0(np.array([r]))[0].real * r * r)

        value, _ = quad(integrand, support[0], support[1], epsabs=0.0, epsrel=1e-12, limit=400)
        return float(value)


def _trivial_state(spec: BackgroundSpec) -> ExtendedState:
    radii = np.array([0.0, 1.0])
    return ExtendedState(background=spec, method="exact", radii=radii, psi=radii.copy(), dpsi=np.ones(2),
                         matching_radius=np.inf, residual=0.0)


def _table_radii(matching_radius: float) -> np.ndarray:
    near = np.linspace(0.0, min(50.0, matching_radius), 10001)
    if matching_radius <= 50.0:
        return near
    far = np.geomspace(50.0, matching_radius, 4001)[1:]
    return np.concatenate([near, far])


def _tail_integrals(potential: Callable[[np.ndarray], np.ndarray], radius: float) -> Tuple[float, float]:
    j0, _ = quad(lambda r: float(potential(np.array([r]))[0]), radius, np.inf, epsabs=0.0, epsrel=1e-12,
                 limit=400)
    j1, _ = quad(lambda r: float(potential(np.array([r]))[0]) * (r - radius), radius, np.inf, epsabs=0.0,
                 epsrel=1e-12, limit=400)
    return float(j0), float(j1)


def _cell_residual(radii: np.ndarray, psi: Callable[[np.ndarray], np.ndarray],
                   dpsi: Callable[[np.ndarray], np.ndarray],
                   potential: Callable[[np.ndarray], np.ndarray]) -> float:
    """ sup over cells of |psi'(b) - psi'(a) - int_a^b V psi| / (b - a) """
    left, right = radii[:-1], radii[1:]
    half = 0.5 * (right - left)
    centre = 0.5 * (right + left)
    nodes = centre[:, None] + half[:, None] * _GAUSS_NODES[None, :]
    integral = np.sum(_GAUSS_WEIGHTS[None, :] * potential(nodes) * psi(nodes), axis=1) * half
    jump = dpsi(right) - dpsi(left)
    return float(np.max(np.abs(jump - integral) / (right - left)))


def _shoot(spec: BackgroundSpec, matching_radius: float) -> ExtendedState:
    potential = spec.potential_values

    def rhs(r: float, y: np.ndarray) -> np.ndarray:
        return np.array([y[1], float(potential(np.array([r]))[0]) * y[0]])

    solution = solve_ivp(rhs, (0.0, matching_radius), np.array([0.0, 1.0]), method="DOP853", rtol=1e-12,
                         atol=1e-14, dense_output=True)
    if not solution.success:
        raise ComputeError(f"Extended state shooting failed: {solution.message}")
    radii = _table_radii(matching_radius)
    values = solution.sol(radii)
    j0, j1 = _tail_integrals(potential, matching_radius)
    slope = values[1, -1] * (1.0 + j1) + values[0, -1] * j0
    scale = float(np.max(np.abs(values[1])))
    if abs(slope) < OBSTRUCTION_TOLERANCE * scale:
        raise ExtendedStateObstructed(slope / scale)
    residual = _cell_residual(radii, lambda r: solution.sol(r.ravel())[0].reshape(r.shape),
                              lambda r: solution.sol(r)[1], potential) / abs(slope)
    logger.debug("Extended state by shooting: slope at infinity %.12g, residual %.3e", slope, residual)
    return ExtendedState(background=spec, method="shooting", radii=radii, psi=values[0] / slope,
                         dpsi=values[1] / slope, matching_radius=matching_radius, residual=residual)


def _collocate(spec: BackgroundSpec, matching_radius: float) -> ExtendedState:
    potential = spec.potential_values
    j0, j1 = _tail_integrals(potential, matching_radius)

    def fun(r: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.vstack([y[1], potential(r) * y[0]])

    def bc(ya: np.ndarray, yb: np.ndarray) -> np.ndarray:
        return np.array([ya[0], yb[1] * (1.0 + j1) + yb[0] * j0 - 1.0])

    mesh = np.concatenate([np.linspace(0.0, 20.0, 401), np.geomspace(20.0, matching_radius, 401)[1:]])
    guess = np.vstack([mesh, np.ones_like(mesh)])
    solution = solve_bvp(fun, bc, mesh, guess, tol=1e-10, max_nodes=500000)
    if solution.status != 0:
        raise ComputeError(f"Extended state collocation failed: {solution.message}")
    radii = _table_radii(matching_radius)
    values = solution.sol(radii)
    residual = _cell_residual(radii, lambda r: solution.sol(r.ravel())[0].reshape(r.shape),
                              lambda r: solution.sol(r)[1], potential)
    return ExtendedState(background=spec, method="collocation", radii=radii, psi=values[0], dpsi=values[1],
                         matching_radius=matching_radius, residual=residual)


def solve_extended_state(spec: BackgroundSpec, method: str = "shooting",
                         matching_radius: float = DEFAULT_MATCHING_RADIUS) -> ExtendedState:
    """
    Compute the zero energy state u0 of a background.

    Args:
        spec: the background
        method: 'shooting' (default) or 'collocation'
        matching_radius: radius where the solution is matched to its behaviour at infinity

    Returns:
        The extended state; trivial (u0 = 1) for Schwarzschild and for V = 0

    Raises:
        ExtendedStateObstructed when a zero energy bound state prevents the normalisation
    """
    if spec.is_schwarzschild or spec.potential is None or \
            (spec.potential.amplitude == 0.0 and spec.potential.values is None):
        return _trivial_state(spec)
    if method == "collocation":
        return _collocate(spec, matching_radius)
    return _shoot(spec, matching_radius)


def _static_profile(spec: BackgroundSpec, mode: Mode) -> Tuple[Callable[[np.ndarray], np.ndarray],
                                                               Callable[[np.ndarray, np.ndarray], np.ndarray]]:
    """ psi = r u_static and its exact second r*-derivative """
    mass = spec.mass
    if mode.l == 0:
        return (lambda r: r), (lambda r, lapse: lapse * 2.0 * mass / r ** 2)
    if mode.l == 1 and spec.is_schwarzschild:
        return (lambda r: r * (r - mass)), (lambda r, lapse: lapse * (2.0 - 2.0 * mass ** 2 / r ** 2))
    raise UnsupportedBackground(f"static kernel for l = {mode.l}", spec.kind.value)


def static_kernel_residual(spec: BackgroundSpec, mode: Mode, step: float = 0.0,
                           x_range: Tuple[float, float] = (-20.0, 60.0)) -> float:
    """
    Residual of the static kernel element under -d^2/dr*^2 + V_l.

    The kernel elements are psi = r (l = 0), psi = r (r - m) (l = 1, Schwarzschild) and psi = r u0 (flat).

    Args:
        spec: the background
        mode: l = 0 or l = 1 on Schwarzschild, l = 0 on flat backgrounds
        step: 0 for exact derivatives, otherwise the spacing of the second-order stencil of the evolver
        x_range: the reference r*-grid on Schwarzschild; flat backgrounds use FLAT_WINDOW

    Returns:
        sup over the reference grid of |-psi'' + V_l psi|
    """
    potential = EffectivePotential(spec, mode)
    if not spec.is_schwarzschild:
        if mode.l != 0:
            raise UnsupportedBackground(f"static kernel for l = {mode.l}", spec.kind.value)
        state = solve_extended_state(spec)
        if step == 0.0:
            return state.residual
        # stencils centred on the same nodes for every step
        x = np.linspace(FLAT_WINDOW[0], FLAT_WINDOW[1], FLAT_NODES)
        psi = state.psi_values(x)
        second = (state.psi_values(x + step) - 2.0 * psi + state.psi_values(x - step)) / step ** 2
        return float(np.max(np.abs(-second + np.asarray(potential.of_tortoise(x)) * psi)))

    psi_of_r, second_of_r = _static_profile(spec, mode)
    if step == 0.0:
        x = np.linspace(x_range[0], x_range[1], 4001)
        r, lapse = potential.radius_and_lapse(x)
        values = np.asarray(potential.of_tortoise(x))
        return float(np.max(np.abs(-second_of_r(r, lapse) + values * psi_of_r(r))))
    x = np.arange(x_range[0], x_range[1] + 0.5 * step, step)
    r, _ = potential.radius_and_lapse(x)
    psi = psi_of_r(r)
    second = (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / step ** 2
    values = np.asarray(potential.of_tortoise(x[1:-1]))
    return float(np.max(np.abs(-second + values * psi[1:-1])))


def static_kernel_order(spec: BackgroundSpec, mode: Mode, steps: Sequence[float] = (0.4, 0.2, 0.1)) -> float:
    """ Observed order of the static kernel residual under successive halvings of the stencil step """
    residuals = [static_kernel_residual(spec, mode, step) for step in steps]
    orders = [np.log(residuals[i] / residuals[i + 1]) / np.log(steps[i] / steps[i + 1])
              for i in range(len(steps) - 1)]
    return float(orders[-1])
