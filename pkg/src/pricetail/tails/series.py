from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from pricetail.exceptions import ComputeError


@dataclass(frozen=True)
class TimeSeries:
    """
    Samples (x, value) of one observer.

    parameter: what x measures, 't*' at fixed radius, 'u' on the radiation field and along rays, 'x' for
        derived curves such as the local power index
    """
    parameter: str
    x: np.ndarray
    values: np.ndarray
    observer: str = ""
    metadata: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=float)
        values = np.asarray(self.values)
        if x.shape != values.shape or x.ndim != 1:
            raise ComputeError(f"Series '{self.observer}' has {x.size} abscissae for {values.size} values")
        if x.size > 1 and np.any(np.diff(x) <= 0.0):
            raise ComputeError(f"Series '{self.observer}' abscissae are not strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ComputeError(f"Series '{self.observer}' contains non-finite values")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.x.size)

    def window(self, start: float, end: float) -> "TimeSeries":
        """ The samples with start <= x <= end """
        keep = (self.x >= start) & (self.x <= end)
        return TimeSeries(self.parameter, self.x[keep], self.values[keep], self.observer, dict(self.metadata))

    def scaled(self, factor: float) -> "TimeSeries":
        return TimeSeries(self.parameter, self.x, factor * self.values, self.observer, dict(self.metadata))

    def at(self, x: np.ndarray) -> np.ndarray:
        """ Linear interpolation of the series at the given abscissae """
        return np.interp(np.asarray(x, dtype=float), self.x, self.values)
