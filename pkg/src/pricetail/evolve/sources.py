"""
Reduction of a separable forcing chi(t) f(r) to the source of the mode equation

    psi_tt - psi_{r*r*} + V_l psi = S,    S(t, r*) = (1 - 2m/r) r chi(t) f(r)

For a general l, f is the coefficient of the single harmonic being evolved.
"""
from typing import Optional

import numpy as np

from pricetail.background.potentials import EffectivePotential
from pricetail.background.specs import BackgroundSpec, Mode
from pricetail.evolve.data import ForcingSpec
from pricetail.profiles import TemporalProfile


class ModeSource:
    """ The separable source S(t, r*) = chi(t) s(r*) of one mode """
    def __init__(self, background: BackgroundSpec, mode: Mode, forcing: Optional[ForcingSpec]) -> None:
        self.__forcing = forcing
        self.__potential = EffectivePotential(background, mode)

    @property
    def forcing(self) -> Optional[ForcingSpec]:
        return self.__forcing

    @property
    def is_zero(self) -> bool:
        return self.__forcing is None or self.__forcing.is_zero

    @property
    def chi(self) -> Optional[TemporalProfile]:
        return None if self.__forcing is None else self.__forcing.chi

    def spatial(self, x: np.ndarray) -> np.ndarray:
        """ s(r*) = (1 - 2m/r) r f(r) """
        x = np.asarray(x, dtype=float)
        if self.is_zero:
            return np.zeros_like(x)
        assert self.__forcing is not None
        r, lapse = self.__potential.radius_and_lapse(x)
        return lapse * r * self.__forcing.fr(r)

    def temporal(self, t: float) -> float:
        if self.is_zero:
            return 0.0
        assert self.__forcing is not None
        return float(self.__forcing.chi(np.asarray(t)))

    def __call__(self, t: float, x: np.ndarray) -> np.ndarray:
        return self.temporal(t) * self.spatial(x)


def reduce_to_mode(spec: BackgroundSpec, mode: Mode, forcing: Optional[ForcingSpec]) -> ModeSource:
    """
    The source of the psi = r phi equation for one mode.

    Args:
        spec: the background
        mode: the harmonic degree being evolved
        forcing: the separable forcing, or None

    Returns:
        A ModeSource S with S(t, r*) = (1 - 2m/r) r chi(t) f(r); identically zero without forcing
    """
    return ModeSource(spec, mode, forcing)
