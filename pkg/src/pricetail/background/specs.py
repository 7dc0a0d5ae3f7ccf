"""
Background descriptions: which spacetime, which potential, which angular mode.

These are the configuration-facing value types. They are frozen pydantic models so that they can be
built straight from a validated config section, hashed, and shipped to worker processes.
"""
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.interpolate import CubicSpline


class BackgroundKind(str, Enum):
    SCHWARZSCHILD = "schwarzschild"
    FLAT_POTENTIAL = "flat_potential"


class PotentialProfile(str, Enum):
    INVERSE_CUBIC = "inverse_cubic"
    INVERSE_QUARTIC = "inverse_quartic"
    CUSTOM = "custom"


class PotentialSpec(BaseModel):
    """ A stationary radial potential V(r)

    amplitude: the V0 scale of the analytic profiles
    profile: inverse_cubic V0/(1+r)^3, inverse_quartic V0/(1+r)^4, or custom
    radii, values: samples of a custom profile, interpolated with a cubic spline
    decay_order: 3 or 4; the custom table must be consistent with it
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    amplitude: float = 0.0
    profile: PotentialProfile = PotentialProfile.INVERSE_CUBIC
    radii: Optional[List[float]] = None
    values: Optional[List[float]] = None
    decay_order: Optional[int] = Field(default=None, ge=3, le=4)

    @model_validator(mode="after")
    def check_profile(self) -> "PotentialSpec":
        if self.profile != PotentialProfile.CUSTOM:
            return self
        if self.decay_order is None:
            raise ValueError("a custom potential needs a decay_order tag")
        if self.radii is None or self.values is None or len(self.radii) != len(self.values) or len(self.radii) < 8:
            raise ValueError("a custom potential needs at least 8 radii and as many values")
        radii = np.asarray(self.radii)
        if np.any(np.diff(radii) <= 0.0) or radii[0] < 0.0:
            raise ValueError("custom potential radii must be non-negative and strictly increasing")
        tail = slice(3 * len(radii) // 4, None)
        scaled = np.abs(np.asarray(self.values)[tail]) * radii[tail] ** self.decay_order
        if np.any(scaled > 0.0):
            # log-log slope of |V| r^order over the last quarter of the table must not be positive
            slope = np.polyfit(np.log(radii[tail]), np.log(np.maximum(scaled, 1e-300)), 1)[0]
            if slope > 0.1:
                raise ValueError(f"custom potential does not decay like r^-{self.decay_order} "
                                 f"(tail slope {slope:.3f})")
        return self

    @property
    def order(self) -> int:
        """ Decay order of the profile at infinity """
        if self.profile == PotentialProfile.INVERSE_CUBIC:
            return 3
        if self.profile == PotentialProfile.INVERSE_QUARTIC:
            return 4
        assert self.decay_order is not None
        return self.decay_order

    @property
    def leading_coefficient(self) -> float:
        """ The r^-3 coefficient of V at infinity (zero for short-range potentials) """
        if self.order != 3:
            return 0.0
        if self.profile == PotentialProfile.INVERSE_CUBIC:
            return self.amplitude
        assert self.radii is not None and self.values is not None
        return float(self.values[-1] * self.radii[-1] ** 3)

    def series_coefficients(self, order: int) -> List[float]:
        """ Coefficients p_q of r^-q, q = 0..order, of the large-r expansion of V """
        coefficients = [0.0] * (order + 1)
        if self.profile == PotentialProfile.CUSTOM:
            assert self.radii is not None and self.values is not None
            if self.order <= order:
                coefficients[self.order] = float(self.values[-1] * self.radii[-1] ** self.order)
            return coefficients
        power = 3 if self.profile == PotentialProfile.INVERSE_CUBIC else 4
        # (1 + 1/r)^-power expanded in 1/r
        binomial = 1.0
        for j in range(0, order - power + 1):
            coefficients[power + j] = self.amplitude * (-1) ** j * binomial
            binomial = binomial * (power + j) / (j + 1)
        return coefficients

    def evaluate(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if self.profile == PotentialProfile.INVERSE_CUBIC:
            return self.amplitude / (1.0 + r) ** 3
        if self.profile == PotentialProfile.INVERSE_QUARTIC:
            return self.amplitude / (1.0 + r) ** 4
        return _custom_potential(self.radii, self.values, self.order, r)  # type: ignore


def _custom_potential(radii: List[float], values: List[float], order: int, r: np.ndarray) -> np.ndarray:
    spline = CubicSpline(radii, values)
    r_last = radii[-1]
    inside = spline(np.minimum(r, r_last))
    outside = values[-1] * (r_last / np.maximum(r, r_last)) ** order
    return np.where(r <= r_last, inside, outside)


class BackgroundSpec(BaseModel):
    """ Which spacetime (Schwarzschild exterior, or flat space with a radial potential)

    kind: schwarzschild or flat_potential
    mass: the mass m in geometric units; positive for schwarzschild, zero for flat_potential
    potential: the stationary potential of a flat_potential background (absent means V = 0)
    kerr_a: the rotation parameter, used only by the Kerr tail constant quadrature
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: BackgroundKind = BackgroundKind.SCHWARZSCHILD
    mass: float = 1.0
    potential: Optional[PotentialSpec] = None
    kerr_a: float = 0.0

    @model_validator(mode="after")
    def check_mass(self) -> "BackgroundSpec":
        if self.kind == BackgroundKind.SCHWARZSCHILD:
            if self.mass <= 0.0:
                raise ValueError("a schwarzschild background needs mass > 0")
            if self.potential is not None:
                raise ValueError("a schwarzschild background takes no potential")
        elif self.mass != 0.0:
            raise ValueError("a flat_potential background needs mass = 0")
        return self

    @property
    def is_schwarzschild(self) -> bool:
        return self.kind == BackgroundKind.SCHWARZSCHILD

    @property
    def horizon(self) -> float:
        """ Lower end of the radial domain: 2m for Schwarzschild, 0 for flat space """
        return 2.0 * self.mass

    def potential_values(self, r: np.ndarray) -> np.ndarray:
        if self.potential is None:
            return np.zeros_like(np.asarray(r, dtype=float))
        return self.potential.evaluate(r)

    def check_kerr(self) -> None:
        if not abs(self.kerr_a) < self.mass:
            raise ValueError(f"kerr_a = {self.kerr_a} must satisfy |a| < m = {self.mass}")


class Mode(BaseModel):
    """ A spherical harmonic degree l; the azimuthal index plays no role on these backgrounds """
    model_config = ConfigDict(frozen=True, extra="forbid")

    l: int = Field(default=0, ge=0)

    @property
    def eigenvalue(self) -> int:
        return self.l * (self.l + 1)

    @property
    def degeneracy(self) -> int:
        return 2 * self.l + 1

    @field_validator("l", mode="before")
    @classmethod
    def coerce_l(cls, value: object) -> object:
        if isinstance(value, str):
            return int(value)
        return value
