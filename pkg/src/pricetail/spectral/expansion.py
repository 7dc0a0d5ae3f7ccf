"""
Two steps of the low-frequency expansion of R(sigma) f on Schwarzschild, l = 0.

Writing the frequency-dependent part of the operator as -sigma^-1 (P(sigma) - P(0)) u = (2i/r) d(r u)/dr, the
iterates are

    u0 = R(0) f,  f1 = (2i/r)(u0 - I0 / (r - 2m)),  u1 = R(0) f1,  f2 = (2i/r)(u1 - I1 / (r - 2m))

with I_k = int f_k r^2 the moments of the static solves. For large r, f1 ~ -2i m c0 r^-3,
u1 r ~ A - 2i m c0 log r and f2 ~ 4 m c0 r^-2; the last one is the seed of the t^-3 tail, with
c_X = 4 m c0 and the late-time constant c_M = -2 c_X.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from pricetail.background.potentials import effective_mass
from pricetail.background.specs import BackgroundSpec, Mode
from pricetail.exceptions import DegenerateData
from pricetail.profiles import RadialProfile
from pricetail.spectral.zero_energy import (OUTER_RADIUS, StaticSolution, ZeroEnergySolution, static_solve,
                                            zero_energy_solve)

logger = logging.getLogger(__name__)

LOG_WINDOW = (1e3, 1e5)


def _next_source(spec: BackgroundSpec, static: StaticSolution):
    """ f_{k+1} as a function of y, from I_k and u_k """
    def source(y: float) -> complex:
        delta = float(np.exp(y))
        r = spec.horizon + delta
        moment, value = static.of_y(y)
        # r (1 - 2m/r) = delta
        return 2.0j / r * (value - moment / delta)
    return source


@dataclass(frozen=True)
class ExpansionState:
    """ The iterates u0, f1, u1, f2 and the constants they produce """
    background: BackgroundSpec
    zero: ZeroEnergySolution
    first: StaticSolution
    mass: float
    c0: float

    @property
    def c_x(self) -> float:
        return 4.0 * self.mass * self.c0

    @property
    def c_m(self) -> float:
        return -2.0 * self.c_x

    def f1(self, r: np.ndarray) -> np.ndarray:
        return self._source_values(self.zero.static, r)

    def u1(self, r: np.ndarray) -> np.ndarray:
        return self.first.of_radius(r)[1]

    def f2(self, r: np.ndarray) -> np.ndarray:
        return self._source_values(self.first, r)

    def _source_values(self, static: StaticSolution, r: np.ndarray) -> np.ndarray:
        source = _next_source(self.background, static)
        y = np.log(np.atleast_1d(np.asarray(r, dtype=float)) - self.background.horizon)
        return np.array([source(float(value)) for value in y])

    def f2_ratio(self, r: float = 1e3) -> complex:
        """ f2 r^2 / (4 m c0), which tends to 1 """
        if self.c_x == 0.0:
            raise DegenerateData("4 m c0 vanishes; the second iterate carries no r^-2 term")
        return complex(self.f2(np.array([r]))[0] * r * r / self.c_x)

    def f2_limit(self, window: Tuple[float, float] = LOG_WINDOW) -> complex:
        """ lim f2 r^2 / (4 m c0) from the fit f2 r^2 = c + (d + e log r) / r over the window """
        if self.c_x == 0.0:
            raise DegenerateData("4 m c0 vanishes; the second iterate carries no r^-2 term")
        r = np.geomspace(window[0], window[1], 200)
        matrix = np.column_stack([np.ones_like(r), 1.0 / r, np.log(r) / r]).astype(complex)
        solution, _, _, _ = np.linalg.lstsq(matrix, self.f2(r) * r * r, rcond=None)
        return complex(solution[0] / self.c_x)

    def log_coefficient(self, window: Tuple[float, float] = LOG_WINDOW) -> complex:
        """ B / (-2i m c0) from the least squares fit u1 r = A + B log r over the window """
        if self.mass * self.c0 == 0.0:
            raise DegenerateData("m c0 vanishes; the first iterate has no logarithm")
        r = np.geomspace(window[0], window[1], 200)
        matrix = np.column_stack([np.ones_like(r), np.log(r)]).astype(complex)
        solution, _, _, _ = np.linalg.lstsq(matrix, self.u1(r) * r, rcond=None)
        return complex(solution[1] / (-2.0j * self.mass * self.c0))


def expansion_iterate(spec: BackgroundSpec, profile: RadialProfile, mode: Mode = Mode(),
                      outer_radius: float = OUTER_RADIUS) -> ExpansionState:
    """
    Run u0 -> f1 -> u1 -> f2 for a radial source.

    Args:
        spec: the background (the expansion is nontrivial on Schwarzschild)
        profile: the source f
        mode: must be l = 0
        outer_radius: outer radius of both static solves

    Returns:
        ExpansionState; c0 is the same pairing quadrature the predicted constants use

    Raises:
        UnsupportedBackground, ZeroEnergyMismatch
    """
    zero = zero_energy_solve(spec, profile, mode, outer_radius)
    source = _next_source(spec, zero.static)
    y_end = float(np.log(outer_radius - spec.horizon))
    # f1 ~ kappa r^-3 beyond R, so int_R^inf f1 s^2 L(s) ds ~ kappa / R
    kappa = source(y_end) * outer_radius ** 3
    first = static_solve(spec, source, kappa / outer_radius, outer_radius)
    state = ExpansionState(background=spec, zero=zero, first=first, mass=effective_mass(spec), c0=zero.c0)
    logger.info("Expansion: c0 = %.12g, c_X = %.12g, c_M = %.12g", state.c0, state.c_x, state.c_m)
    return state
