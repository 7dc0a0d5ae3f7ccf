"""
Grids of the two time domain schemes.
"""
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class Boundary(str, Enum):
    EXCISION = "excision"
    SOMMERFELD = "sommerfeld"
    ORIGIN = "origin"


class CauchyGrid(BaseModel):
    """ Uniform grid in r* for the leapfrog scheme

    x_min, x_max: the r* interval
    step: the spacing dr*
    cfl: the Courant number, dt = cfl * dr*
    t_end: final time
    left, right: boundary treatment; excision holds the field at zero and relies on the causal guard,
        sommerfeld is a first order outgoing condition, origin is the regular centre r = 0 of a flat background
    energy_interval: time between samples of the discrete energy (0 disables it)
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    x_min: float = -200.0
    x_max: float = 4200.0
    step: float = Field(default=0.05, gt=0.0)
    cfl: float = 0.5
    t_end: float = Field(default=2000.0, gt=0.0)
    left: Boundary = Boundary.SOMMERFELD
    right: Boundary = Boundary.EXCISION
    energy_interval: float = Field(default=0.0, ge=0.0)

    @model_validator(mode="after")
    def check_interval(self) -> "CauchyGrid":
        if self.x_max <= self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.right == Boundary.ORIGIN:
            raise ValueError("the origin can only be the left boundary")
        return self

    @property
    def points(self) -> int:
        return int(round((self.x_max - self.x_min) / self.step)) + 1

    @property
    def dt(self) -> float:
        return self.cfl * self.step

    @property
    def steps(self) -> int:
        return int(np.ceil(self.t_end / self.dt - 1e-9))

    @property
    def nodes(self) -> np.ndarray:
        return self.x_min + self.step * np.arange(self.points)

    def refined(self, factor: int = 2) -> "CauchyGrid":
        return self.model_copy(update={"step": self.step / factor})

    def describe(self) -> str:
        return (f"r* in [{self.x_min:g}, {self.x_max:g}], dr*={self.step:g}, cfl={self.cfl:g}, "
                f"t_end={self.t_end:g}, {self.left.value}/{self.right.value}")


class NullGrid(BaseModel):
    """ Double null grid u = u0 + k h (k = 0..nu), v = v0 + j h (j = 0..nv) """
    model_config = ConfigDict(frozen=True, extra="forbid")

    u0: float = -20.0
    v0: float = 8.0
    h: float = Field(default=0.1, gt=0.0)
    nu: int = Field(default=6000, ge=1)
    nv: int = Field(default=30000, ge=1)

    @property
    def u_values(self) -> np.ndarray:
        return self.u0 + self.h * np.arange(self.nu + 1)

    @property
    def v_values(self) -> np.ndarray:
        return self.v0 + self.h * np.arange(self.nv + 1)

    @property
    def u_end(self) -> float:
        return self.u0 + self.nu * self.h

    @property
    def v_end(self) -> float:
        return self.v0 + self.nv * self.h

    @property
    def corner(self) -> float:
        """ r* of the corner (u0, v0) """
        return 0.5 * (self.v0 - self.u0)

    def refined(self, factor: int = 2) -> "NullGrid":
        return self.model_copy(update={"h": self.h / factor, "nu": self.nu * factor, "nv": self.nv * factor})

    def describe(self) -> str:
        return f"u in [{self.u0:g}, {self.u_end:g}], v in [{self.v0:g}, {self.v_end:g}], h={self.h:g}"
