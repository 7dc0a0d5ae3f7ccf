"""
The local power index p(x) = -x v'(x) / v(x) of a decaying series.

The series is interpolated as log|v| against log x with a cubic spline, resampled uniformly in log x and
differentiated with second order differences (one-sided at the ends).
"""
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline

from pricetail.exceptions import ComputeError, ZeroCrossing
from pricetail.tails.series import TimeSeries


def _sign_changes(series: TimeSeries) -> np.ndarray:
    """ indices i such that the sign changes between nonzero samples i and the next nonzero one """
    nonzero = np.flatnonzero(series.values != 0.0)
    signs = np.sign(series.values[nonzero])
    return nonzero[:-1][signs[1:] != signs[:-1]]


def last_zero_crossing(series: TimeSeries) -> Optional[float]:
    """ Abscissa of the last sign change of the series, linearly interpolated; None if there is none """
    changes = _sign_changes(series)
    if changes.size == 0:
        return None
    index = int(changes[-1])
    following = index + 1 + int(np.argmax(series.values[index + 1:] != 0.0))
    x0, x1 = series.x[index], series.x[following]
    v0, v1 = series.values[index], series.values[following]
    return float(x0 - v0 * (x1 - x0) / (v1 - v0))


def local_power_index(series: TimeSeries, start: Optional[float] = None, end: Optional[float] = None,
                      points: Optional[int] = None) -> TimeSeries:
    """
    Local power index of a series on a window of positive abscissae.

    Args:
        series: the samples
        start, end: the window (defaults: the first positive abscissa and the last abscissa)
        points: number of log-uniform evaluation points (default: the number of samples in the window)

    Returns:
        TimeSeries of p against x

    Raises:
        ZeroCrossing when the series changes sign or vanishes inside the window
    """
    positive = series.x[series.x > 0.0]
    if positive.size < 4:
        raise ComputeError(f"Series '{series.observer}' has too few samples at positive {series.parameter}")
    start = float(positive[0]) if start is None else max(start, float(positive[0]))
    end = float(series.x[-1]) if end is None else end
    window = series.window(start, end)
    if len(window) < 4:
        raise ComputeError(f"Window [{start:.6g}, {end:.6g}] of series '{series.observer}' has too few samples")
    crossing = last_zero_crossing(window)
    if crossing is not None:
        raise ZeroCrossing(crossing)
    if np.any(window.values == 0.0):
        raise ZeroCrossing(float(window.x[np.argmax(window.values == 0.0)]))

    log_x = np.log(window.x)
    spline = CubicSpline(log_x, np.log(np.abs(window.values)))
    count = points if points is not None else len(window)
    s = np.linspace(log_x[0], log_x[-1], count)
    index = -np.gradient(spline(s), s, edge_order=2)
    return TimeSeries(window.parameter, np.exp(s), index, observer=f"lpi {window.observer}".strip(),
                      metadata=dict(window.metadata))
