from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from pricetail.tails.series import TimeSeries


@dataclass(frozen=True)
class EvolutionResult:
    """ Time series of one evolution, keyed by observer name, with the run metadata """
    scheme: str
    grid: str
    series: Dict[str, TimeSeries]
    steps: int
    wall_clock: float
    energy: Optional[TimeSeries] = None
    metadata: Dict[str, str] = field(default_factory=dict)

    def __getitem__(self, name: str) -> TimeSeries:
        return self.series[name]

    @property
    def observers(self) -> List[str]:
        return list(self.series)


def energy_is_monotone(energy: TimeSeries, start: float = 0.0, tolerance: float = 1e-6) -> bool:
    """
    Whether the discrete energy is non-increasing after the given time.

    Args:
        energy: the energy series of a leapfrog run
        start: time after which the check applies (after the pulse has left through the left boundary)
        tolerance: allowed relative increase between consecutive samples

    Returns:
        True when no sample exceeds its predecessor by more than tolerance * the first checked value
    """
    window = energy.window(start, np.inf)
    if len(window) < 2:
        return True
    scale = max(abs(float(window.values[0])), np.finfo(float).tiny)
    return bool(np.all(np.diff(window.values) <= tolerance * scale))
