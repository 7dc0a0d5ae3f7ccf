"""
Tail exponent and coefficient estimates.

The exponent comes from fitting p(x) = p_inf + beta/x to the local power index, the coefficient from
fitting v(x) x^q = c + d/x with q the target exponent. Both forms carry one extra inverse power as the
remainder. Error bars are the spread between the fit on the whole window and the fits on its two halves
(split at the geometric mean).
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from pricetail.exceptions import FitResidualTooLarge, WindowTooShort
from pricetail.tails.power_index import last_zero_crossing, local_power_index
from pricetail.tails.series import TimeSeries

logger = logging.getLogger(__name__)

HALF_DECADE = 10.0 ** 0.5
CROSSING_MARGIN = 3.0
MISMATCH_LIMIT = 0.5


@dataclass(frozen=True)
class TailReport:
    """ Measured tail of one series """
    lpi: TimeSeries
    exponent: float
    exponent_error: float
    coefficient: Optional[float]
    coefficient_error: Optional[float]
    window: Tuple[float, float]
    residual: float
    target_exponent: Optional[float] = None
    predicted_coefficient: Optional[float] = None
    exponent_mismatch: bool = False
    ratio: Optional[float] = None
    within_tolerance: Optional[bool] = None


def expected_exponent(l: int, observer: str = "fixed_radius", static: bool = False) -> int:
    """
    The predicted decay exponent of mode l.

    Args:
        l: the harmonic degree
        observer: 'fixed_radius' (t^-(2l+3)), 'radiation_field' (u^-(l+2)) or 'ray' (t*^-(l+3))
        static: initially static data decay one power faster

    Returns:
        The exponent
    """
    base = {"fixed_radius": 2 * l + 3, "radiation_field": l + 2, "ray": l + 3}[observer]
    return base + (1 if static else 0)


def auto_window(series: TimeSeries) -> Tuple[float, float]:
    """ From three times the last zero crossing (or the first nonzero positive sample) to the end """
    positive = series.x[(series.x > 0.0) & (series.values != 0.0)]
    start = float(positive[0]) if positive.size else float(series.x[-1])
    crossing = last_zero_crossing(series.window(start, np.inf))
    if crossing is not None and crossing > 0.0:
        start = max(start, CROSSING_MARGIN * crossing)
    return start, float(series.x[-1])


def inverse_fit(x: np.ndarray, y: np.ndarray) -> Tuple[float, float, float]:
    """ least squares y = a + b/x; returns a, b and the rms residual """
    matrix = np.column_stack([np.ones_like(x), 1.0 / x])
    solution, _, _, _ = np.linalg.lstsq(matrix, y, rcond=None)
    residual = float(np.sqrt(np.mean((matrix @ solution - y) ** 2)))
    return float(solution[0]), float(solution[1]), residual


def halving_spread(x: np.ndarray, y: np.ndarray, full: float) -> float:
    middle = np.sqrt(x[0] * x[-1])
    spread = 0.0
    for part in (x <= middle, x >= middle):
        if np.count_nonzero(part) >= 3:
            spread = max(spread, abs(inverse_fit(x[part], y[part])[0] - full))
    return spread


def tail_fit(series: TimeSeries, target_exponent: Optional[float] = None,
             predicted_coefficient: Optional[float] = None, window: Optional[Tuple[float, float]] = None,
             tolerance: float = 0.1, residual_limit: float = 0.1) -> TailReport:
    """
    Measure the tail exponent and coefficient of a series.

    Args:
        series: the samples
        target_exponent: the exponent the coefficient is extracted at; when the measured exponent is more
            than 0.5 away the report flags a mismatch and no coefficient is extracted
        predicted_coefficient: reported as a ratio when given
        window: the fit window (default: auto_window)
        tolerance: allowed |ratio - 1|
        residual_limit: largest relative rms residual of the exponent fit

    Returns:
        TailReport

    Raises:
        WindowTooShort, ZeroCrossing, FitResidualTooLarge
    """
    start, end = auto_window(series) if window is None else window
    if start <= 0.0 or end / start < HALF_DECADE:
        raise WindowTooShort(start, end)
    lpi = local_power_index(series, start, end)
    exponent, _, residual = inverse_fit(lpi.x, lpi.values)
    relative_residual = residual / max(abs(exponent), 1.0)
    if relative_residual > residual_limit:
        raise FitResidualTooLarge(relative_residual)
    exponent_error = halving_spread(lpi.x, lpi.values, exponent)

    mismatch = False
    coefficient: Optional[float] = None
    coefficient_error: Optional[float] = None
    if target_exponent is not None and abs(exponent - target_exponent) > MISMATCH_LIMIT:
        mismatch = True
        logger.warning("Measured exponent %.3f does not match the target %g", exponent, target_exponent)
    else:
        power = float(target_exponent) if target_exponent is not None else float(round(exponent))
        samples = series.window(start, end)
        scaled = samples.values * samples.x ** power
        coefficient, _, _ = inverse_fit(samples.x, scaled)
        coefficient_error = halving_spread(samples.x, scaled, coefficient)

    ratio = None
    within = None
    if coefficient is not None and predicted_coefficient:
        ratio = coefficient / predicted_coefficient
        within = abs(ratio - 1.0) <= tolerance
    return TailReport(lpi=lpi, exponent=exponent, exponent_error=exponent_error, coefficient=coefficient,
                      coefficient_error=coefficient_error, window=(start, end), residual=relative_residual,
                      target_exponent=target_exponent, predicted_coefficient=predicted_coefficient,
                      exponent_mismatch=mismatch, ratio=ratio, within_tolerance=within)
