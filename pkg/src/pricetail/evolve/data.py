"""
Initial data and forcing of the time domain problems.
"""
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from pricetail.profiles import RadialProfile, TemporalProfile


class CauchyData(BaseModel):
    """ phi and d_t phi at t = 0 as radial profiles """
    model_config = ConfigDict(frozen=True, extra="forbid")

    phi0: RadialProfile = RadialProfile()
    phi1: RadialProfile = RadialProfile()

    @property
    def is_zero(self) -> bool:
        return self.phi0.is_zero and self.phi1.is_zero

    @property
    def is_time_symmetric(self) -> bool:
        return self.phi1.is_zero

    @property
    def support(self) -> Tuple[float, float]:
        supports = [profile.support for profile in (self.phi0, self.phi1) if not profile.is_zero]
        if not supports:
            return 0.0, 0.0
        return min(s[0] for s in supports), max(s[1] for s in supports)

    def psi(self, r: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """ psi = r phi0 and psi_t = r phi1 at the given radii """
        r = np.asarray(r, dtype=float)
        return r * self.phi0(r), r * self.phi1(r)

    def describe(self) -> str:
        return f"phi0={self.phi0.describe()}, phi1={self.phi1.describe()}"


class CharacteristicData(BaseModel):
    """ Data on the initial null rays of the double null scheme: psi(u0, v) = g(v), psi(u, v0) = g(v0) """
    model_config = ConfigDict(frozen=True, extra="forbid")

    ingoing: RadialProfile = RadialProfile()

    @property
    def is_zero(self) -> bool:
        return self.ingoing.is_zero

    def describe(self) -> str:
        return f"g={self.ingoing.describe()}"


class ForcingSpec(BaseModel):
    """ A separable forcing chi(t) f(r) of the wave equation """
    model_config = ConfigDict(frozen=True, extra="forbid")

    chi: TemporalProfile = TemporalProfile()
    fr: RadialProfile = RadialProfile()

    @property
    def is_zero(self) -> bool:
        return self.fr.is_zero or self.chi.amplitude == 0.0

    @property
    def time_support(self) -> Tuple[float, float]:
        return self.chi.support

    def describe(self) -> str:
        return f"chi={self.chi.kind.value}(c={self.chi.center:g}, w={self.chi.width:g}), f={self.fr.describe()}"
