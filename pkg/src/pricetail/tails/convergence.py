from typing import Optional, Tuple

import numpy as np

from pricetail.exceptions import SubNoiseDifferences
from pricetail.tails.series import TimeSeries

NOISE_FACTOR = 100.0


def richardson_order(coarse: TimeSeries, medium: TimeSeries, fine: TimeSeries,
                     window: Optional[Tuple[float, float]] = None) -> float:
    """
    Observed convergence order of three grid levels with refinement ratio 2.

    The medium and fine series are interpolated at the coarse abscissae when they are sampled differently.

    Args:
        coarse, medium, fine: the same observable on successively halved grids
        window: restrict to start <= x <= end

    Returns:
        The median over the window of log2(|coarse - medium| / |medium - fine|)

    Raises:
        SubNoiseDifferences when no sample has grid differences above round-off
    """
    if window is not None:
        coarse = coarse.window(*window)
    x = coarse.x
    inside = (x >= max(medium.x[0], fine.x[0])) & (x <= min(medium.x[-1], fine.x[-1]))
    x = x[inside]
    c = coarse.values[inside]
    m = medium.values if np.array_equal(medium.x, coarse.x) else medium.at(coarse.x)
    f = fine.values if np.array_equal(fine.x, coarse.x) else fine.at(coarse.x)
    m, f = m[inside], f[inside]
    noise = NOISE_FACTOR * np.finfo(float).eps * max(float(np.max(np.abs(f))) if f.size else 0.0, 1e-300)
    upper = np.abs(c - m)
    lower = np.abs(m - f)
    valid = (lower > noise) & (upper > noise)
    if not np.any(valid):
        raise SubNoiseDifferences()
    return float(np.median(np.log2(upper[valid] / lower[valid])))
