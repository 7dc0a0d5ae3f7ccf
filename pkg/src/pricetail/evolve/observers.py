from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ObserverKind(str, Enum):
    FIXED_RADIUS = "fixed_radius"
    RADIATION_FIELD = "radiation_field"
    RAY = "ray"


class Observer(BaseModel):
    """ Where a run records its time series

    fixed_radius: phi(t, r) at radius, against t* = t - r*(radius)
    radiation_field: psi(u, v_far), which approximates the radiation field, against u
    ray: phi along r = u / ratio (u = t - r*), against u
    stride: keep every stride-th sample
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: ObserverKind = ObserverKind.FIXED_RADIUS
    radius: Optional[float] = None
    v_far: Optional[float] = None
    ratio: Optional[float] = None
    stride: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def check_parameter(self) -> "Observer":
        required = {
            ObserverKind.FIXED_RADIUS: ("radius", self.radius),
            ObserverKind.RADIATION_FIELD: ("v_far", self.v_far),
            ObserverKind.RAY: ("ratio", self.ratio),
        }[self.kind]
        if required[1] is None:
            raise ValueError(f"a {self.kind.value} observer needs '{required[0]}'")
        if self.kind == ObserverKind.RAY and required[1] <= 0.0:
            raise ValueError("a ray observer needs a positive ratio")
        return self

    @property
    def name(self) -> str:
        if self.kind == ObserverKind.FIXED_RADIUS:
            return f"r={self.radius:g}"
        if self.kind == ObserverKind.RADIATION_FIELD:
            return f"scri(v={self.v_far:g})"
        return f"ray(t*/r={self.ratio:g})"

    @property
    def parameter(self) -> str:
        return "t*" if self.kind == ObserverKind.FIXED_RADIUS else "u"
