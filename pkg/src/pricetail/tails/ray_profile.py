"""
Comparison of the field along rays r = t*/v with the global leading term c_M u+(v) t*^-3.
"""
from dataclasses import dataclass
from typing import List, Mapping, Optional, Tuple

import numpy as np

from pricetail.exceptions import DegenerateData, WindowTooShort
from pricetail.tails.fitting import HALF_DECADE, halving_spread, inverse_fit
from pricetail.tails.series import TimeSeries


def u_plus(v: np.ndarray) -> np.ndarray:
    """ The profile u+(v) = v (v + 1) / (v + 2)^2 of the leading term across the forward cone """
    v = np.asarray(v, dtype=float)
    return v * (v + 1.0) / (v + 2.0) ** 2


@dataclass(frozen=True)
class RayRatio:
    """ The extrapolated ratio R(v) = lim phi t*^3 / (c_M u+(v)) along one ray """
    ratio: float
    estimate: float
    error: float
    window: Tuple[float, float]


def ray_profile_check(rays: Mapping[float, TimeSeries], c_m: float,
                      window: Optional[Tuple[float, float]] = None) -> List[RayRatio]:
    """
    Extrapolate phi t*^3 / (c_M u+(v)) along each ray with R + d/t*.

    Args:
        rays: series of phi against t* keyed by the ray parameter v = t*/r
        c_m: the predicted constant of the forcing or data
        window: t* window of the extrapolation (default: the last half decade of each series)

    Returns:
        One RayRatio per ray, in increasing v

    Raises:
        DegenerateData when c_M vanishes
    """
    if c_m == 0.0:
        raise DegenerateData("The predicted constant c_M vanishes; ray ratios are undefined")
    results = []
    for ratio in sorted(rays):
        series = rays[ratio]
        start, end = window if window is not None else (float(series.x[-1]) / HALF_DECADE, float(series.x[-1]))
        if start <= 0.0 or end / start < HALF_DECADE * (1.0 - 1e-12):
            raise WindowTooShort(start, end)
        samples = series.window(start, end)
        scaled = samples.values * samples.x ** 3 / (c_m * float(u_plus(ratio)))
        estimate, _, _ = inverse_fit(samples.x, scaled)
        error = halving_spread(samples.x, scaled, estimate)
        results.append(RayRatio(ratio=float(ratio), estimate=estimate, error=error, window=(start, end)))
    return results
