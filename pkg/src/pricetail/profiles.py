"""
Smooth profile families used for Cauchy data, characteristic data and separable forcing.

Radial profiles f(r) and temporal profiles chi(t) are small frozen pydantic models, so that they come
straight out of a validated config section and can be shipped to worker processes.
"""
from enum import Enum
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

# int_{-1}^{1} exp(-1 / (1 - s^2)) ds
BUMP_INTEGRAL = 0.44399381616807943
GAUSSIAN_REACH = 8.0


class ProfileKind(str, Enum):
    ZERO = "zero"
    GAUSSIAN = "gaussian"
    BUMP = "bump"
    POWER = "power"


def _bump(s: np.ndarray) -> np.ndarray:
    inside = np.abs(s) < 1.0
    safe = np.where(inside, s, 0.0)
    return np.where(inside, np.exp(-1.0 / (1.0 - safe * safe)), 0.0)


class RadialProfile(BaseModel):
    """ A radial profile f(r)

    zero: f = 0
    gaussian: amplitude * exp(-(r - center)^2 / width^2)
    bump: amplitude * exp(-1 / (1 - s^2)), s = (r - center) / width, zero for |s| >= 1
    power: amplitude * r^-power for r >= center, zero below
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: ProfileKind = ProfileKind.ZERO
    amplitude: float = 1.0
    center: float = 0.0
    width: float = Field(default=1.0, gt=0.0)
    power: float = Field(default=5.0, gt=3.0)

    @model_validator(mode="after")
    def check_power_start(self) -> "RadialProfile":
        if self.kind == ProfileKind.POWER and self.center <= 0.0:
            raise ValueError("a power profile needs a positive start radius (center)")
        return self

    @property
    def is_zero(self) -> bool:
        return self.kind == ProfileKind.ZERO or self.amplitude == 0.0

    @property
    def support(self) -> Tuple[float, float]:
        """ Interval outside which the profile vanishes (to double precision for gaussians) """
        if self.kind == ProfileKind.GAUSSIAN:
            return self.center - GAUSSIAN_REACH * self.width, self.center + GAUSSIAN_REACH * self.width
        if self.kind == ProfileKind.BUMP:
            return self.center - self.width, self.center + self.width
        if self.kind == ProfileKind.POWER:
            return self.center, np.inf
        return 0.0, 0.0

    @property
    def decay_order(self) -> float:
        """ Power of r^-1 the profile decays with; compactly supported profiles decay faster than any power """
        if self.kind == ProfileKind.POWER:
            return self.power
        return np.inf

    def __call__(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if self.kind == ProfileKind.GAUSSIAN:
            return self.amplitude * np.exp(-((r - self.center) / self.width) ** 2)
        if self.kind == ProfileKind.BUMP:
            return self.amplitude * _bump((r - self.center) / self.width)
        if self.kind == ProfileKind.POWER:
            safe = np.where(r >= self.center, r, self.center)
            return np.where(r >= self.center, self.amplitude * safe ** -self.power, 0.0)
        return np.zeros_like(r)

    def describe(self) -> str:
        if self.kind == ProfileKind.ZERO:
            return "zero"
        if self.kind == ProfileKind.POWER:
            return f"power(A={self.amplitude:g}, r>={self.center:g}, p={self.power:g})"
        return f"{self.kind.value}(A={self.amplitude:g}, c={self.center:g}, w={self.width:g})"


class TemporalProfile(BaseModel):
    """ A temporal profile chi(t), bump or gaussian, with its integral known in closed form """
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: ProfileKind = ProfileKind.BUMP
    amplitude: float = 1.0
    center: float = 0.0
    width: float = Field(default=1.0, gt=0.0)

    @model_validator(mode="after")
    def check_kind(self) -> "TemporalProfile":
        if self.kind not in (ProfileKind.BUMP, ProfileKind.GAUSSIAN):
            raise ValueError("a temporal profile is a bump or a gaussian")
        return self

    @property
    def support(self) -> Tuple[float, float]:
        reach = self.width if self.kind == ProfileKind.BUMP else GAUSSIAN_REACH * self.width
        return self.center - reach, self.center + reach

    @property
    def integral(self) -> float:
        if self.kind == ProfileKind.BUMP:
            return BUMP_INTEGRAL * self.amplitude * self.width
        return float(np.sqrt(np.pi)) * self.amplitude * self.width

    def __call__(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.kind == ProfileKind.BUMP:
            return self.amplitude * _bump((t - self.center) / self.width)
        return self.amplitude * np.exp(-((t - self.center) / self.width) ** 2)
