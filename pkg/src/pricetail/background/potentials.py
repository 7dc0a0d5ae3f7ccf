"""
Per-mode effective potentials of the radial wave equation psi_tt - psi_{r*r*} + V_l psi = S, psi = r phi.
"""
from typing import Dict, Tuple, Union

import numpy as np

from pricetail.background.chart import RadialChart
from pricetail.background.specs import BackgroundSpec, Mode

ArrayLike = Union[float, np.ndarray]


def _schwarzschild_potential(mass: float, l: int, r: np.ndarray, lapse: np.ndarray) -> np.ndarray:
    return lapse * (l * (l + 1) / r ** 2 + 2.0 * mass / r ** 3)


def effective_potential(spec: BackgroundSpec, mode: Mode, r: ArrayLike) -> ArrayLike:
    """
    The effective potential V_l at radius r.

    Schwarzschild: V_l = (1 - 2m/r)(l(l+1)/r^2 + 2m/r^3). Flat: V_l = l(l+1)/r^2 + V(r).

    Raises:
        ChartDomainError when r is not in the exterior
    """
    chart = RadialChart.for_background(spec)
    chart.tortoise(r)
    r_array = np.asarray(r, dtype=float)
    if spec.is_schwarzschild:
        values = _schwarzschild_potential(spec.mass, mode.l, r_array, 1.0 - 2.0 * spec.mass / r_array)
    else:
        values = mode.eigenvalue / r_array ** 2 + spec.potential_values(r_array)
    if np.ndim(r) == 0:
        return float(values)
    return values


class EffectivePotential:
    """
    V_l as a function of the tortoise coordinate, with tables cached per uniform grid.

    Near the horizon the lapse is evaluated from the horizon distance, so V_l decays exponentially
    towards r* -> -inf instead of being swamped by round-off in r - 2m.
    """
    def __init__(self, background: BackgroundSpec, mode: Mode) -> None:
        self.__background = background
        self.__mode = mode
        self.__chart = RadialChart.for_background(background)
        self.__tables: Dict[Tuple[float, float, int], np.ndarray] = {}

    @property
    def background(self) -> BackgroundSpec:
        return self.__background

    @property
    def mode(self) -> Mode:
        return self.__mode

    @property
    def chart(self) -> RadialChart:
        return self.__chart

    def radius_and_lapse(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """ r(x) and 1 - 2m/r(x) without cancellation """
        x = np.asarray(x, dtype=float)
        delta = np.asarray(self.__chart.horizon_distance(x))
        r = self.__chart.floor + delta
        lapse = delta / r if self.__background.is_schwarzschild else np.ones_like(r)
        return r, lapse

    def of_tortoise(self, x: ArrayLike) -> ArrayLike:
        r, lapse = self.radius_and_lapse(np.atleast_1d(np.asarray(x, dtype=float)))
        if self.__background.is_schwarzschild:
            values = _schwarzschild_potential(self.__background.mass, self.__mode.l, r, lapse)
        else:
            values = self.__mode.eigenvalue / r ** 2 + self.__background.potential_values(r)
        if np.ndim(x) == 0:
            return float(values[0])
        return values

    def table(self, x_min: float, x_max: float, points: int) -> np.ndarray:
        """ V_l on numpy.linspace(x_min, x_max, points), computed once per grid """
        key = (float(x_min), float(x_max), int(points))
        if key not in self.__tables:
            self.__tables[key] = np.asarray(self.of_tortoise(np.linspace(x_min, x_max, points)))
        return self.__tables[key]


def effective_mass(spec: BackgroundSpec) -> float:
    """
    The effective mass m(V) = m + V0_bar / 2, V0_bar being the r^-3 coefficient of the potential.

    Short-range (r^-4) potentials and the zero potential contribute nothing.
    """
    if spec.potential is None:
        return spec.mass
    return spec.mass + 0.5 * spec.potential.leading_coefficient
