import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class SigmaGrid(BaseModel):
    """ Log-spaced frequencies with the outer matching radius of each

    sigma_min, sigma_max, count: the frequencies
    product: sigma * R_out is at least this
    min_radius: R_out is never below this
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    sigma_min: float = Field(default=1e-3, gt=0.0)
    sigma_max: float = Field(default=1e-1, gt=0.0)
    count: int = Field(default=24, ge=1)
    product: float = Field(default=30.0, gt=0.0)
    min_radius: float = Field(default=50.0, gt=0.0)

    @model_validator(mode="after")
    def check_range(self) -> "SigmaGrid":
        if self.sigma_max < self.sigma_min or (self.count > 1 and self.sigma_max == self.sigma_min):
            raise ValueError("sigma_max must exceed sigma_min")
        return self

    @property
    def values(self) -> np.ndarray:
        return np.geomspace(self.sigma_min, self.sigma_max, self.count)

    def outer_radius(self, sigma: float) -> float:
        return max(self.min_radius, self.product / sigma)

    @property
    def outer_radii(self) -> np.ndarray:
        return np.array([self.outer_radius(sigma) for sigma in self.values])

    @property
    def decades(self) -> float:
        return float(np.log10(self.sigma_max / self.sigma_min))
