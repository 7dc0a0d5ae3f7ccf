"""
Cauchy evolution of psi_tt = psi_{r*r*} - V_l psi + S with the second order leapfrog scheme.

    psi^{n+1} = 2 psi^n - psi^{n-1} + dt^2 (D2 psi^n - V psi^n + S^n)

The first step is the second order Taylor step psi^1 = psi^0 + dt pi^0 + dt^2/2 (D2 psi^0 - V psi^0 + S^0).
Boundaries either excise (field held at zero, observers protected by the causal guard), impose a first
order outgoing condition, or, on flat backgrounds, the regular centre psi(0) = 0.
"""
import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from pricetail.background.potentials import EffectivePotential
from pricetail.evolve.data import CauchyData
from pricetail.evolve.grids import Boundary, CauchyGrid
from pricetail.evolve.observers import Observer, ObserverKind
from pricetail.evolve.result import EvolutionResult
from pricetail.evolve.sources import ModeSource
from pricetail.exceptions import (ChartFloorViolation, CflViolation, ComputeError, EvolutionDiverged,
                                  GuardViolation, SupportViolation, UnsupportedBackground, UnsupportedObserver)
from pricetail.tails.series import TimeSeries

logger = logging.getLogger(__name__)

SCHEME = "leapfrog"
FINITE_CHECK_INTERVAL = 500


@dataclass(frozen=True)
class _Station:
    observer: Observer
    x: float
    index: int
    weight: float


def _node_values(grid: CauchyGrid, potential: EffectivePotential) -> Tuple[np.ndarray, np.ndarray]:
    """ radius and V_l at the grid nodes """
    x = grid.nodes
    background = potential.background
    if grid.left == Boundary.ORIGIN:
        if background.is_schwarzschild:
            raise UnsupportedBackground("origin boundary", background.kind.value)
        if grid.x_min != 0.0:
            raise ComputeError(f"An origin boundary needs r*_min = 0, not {grid.x_min}")
        values = np.zeros_like(x)
        values[1:] = potential.of_tortoise(x[1:])
        return x.copy(), values
    if not background.is_schwarzschild and grid.x_min <= 0.0:
        raise ChartFloorViolation(grid.x_min)
    r, _ = potential.radius_and_lapse(x)
    return r, potential.table(grid.x_min, grid.x_max, grid.points)


def _source_values(grid: CauchyGrid, source: Optional[ModeSource]) -> Optional[np.ndarray]:
    if source is None or source.is_zero:
        return None
    x = grid.nodes
    values = np.zeros_like(x)
    interior = x > 0.0 if grid.left == Boundary.ORIGIN else np.ones_like(x, dtype=bool)
    values[interior] = source.spatial(x[interior])
    return values


def _stations(grid: CauchyGrid, potential: EffectivePotential, observers: Sequence[Observer]) -> List[_Station]:
    stations = []
    for observer in observers:
        if observer.kind != ObserverKind.FIXED_RADIUS:
            raise UnsupportedObserver(SCHEME, observer.kind.value)
        assert observer.radius is not None
        x_obs = float(potential.chart.tortoise(observer.radius))
        if not grid.x_min <= x_obs <= grid.x_max:
            raise SupportViolation(f"observer {observer.name} at r* = {x_obs:.6g} is outside the grid")
        position = (x_obs - grid.x_min) / grid.step
        index = min(int(np.floor(position)), grid.points - 2)
        stations.append(_Station(observer, x_obs, index, position - index))
    return stations


def _check_guard(grid: CauchyGrid, stations: Sequence[_Station]) -> None:
    steps = grid.steps
    for station in stations:
        if grid.left == Boundary.EXCISION and steps >= station.index - 1:
            raise GuardViolation(station.observer.name, "left", steps, station.index)
        right_cells = grid.points - 1 - (station.index + 1)
        if grid.right == Boundary.EXCISION and steps >= right_cells - 1:
            raise GuardViolation(station.observer.name, "right", steps, right_cells)


def _check_support(grid: CauchyGrid, data: CauchyData, r: np.ndarray) -> None:
    if data.is_zero:
        return
    r_a, r_b = data.support
    if (r_a <= r[0] and grid.left != Boundary.ORIGIN) or r_b >= r[-1]:
        raise SupportViolation(f"data support [{r_a:g}, {r_b:g}] is not inside the grid "
                               f"r in [{r[0]:.6g}, {r[-1]:.6g}]")


def _apply_boundaries(grid: CauchyGrid, new: np.ndarray, current: np.ndarray, ratio: float) -> None:
    if grid.left == Boundary.SOMMERFELD:
        new[0] = current[0] + ratio * (current[1] - current[0])
    else:
        new[0] = 0.0
    if grid.right == Boundary.SOMMERFELD:
        new[-1] = current[-1] - ratio * (current[-1] - current[-2])
    else:
        new[-1] = 0.0


def _energy(previous: np.ndarray, current: np.ndarray, following: np.ndarray, potential: np.ndarray,
            dt: float, dx: float) -> float:
    """ sum (psi_t^2 + psi_x^2 + V psi^2) dx at the current level, psi_t centred in time """
    psi_t = (following - previous) / (2.0 * dt)
    psi_x = np.diff(current) / dx
    return float((np.sum(psi_t ** 2) + np.sum(psi_x ** 2) + np.sum(potential * current ** 2)) * dx)


def evolve_leapfrog(grid: CauchyGrid, data: CauchyData, potential: EffectivePotential,
                    source: Optional[ModeSource], observers: Sequence[Observer]) -> EvolutionResult:
    """
    Evolve Cauchy data (and forcing) with the leapfrog scheme.

    Args:
        grid: the r* grid, Courant number, final time and boundary treatment
        data: phi and d_t phi at t = 0
        potential: V_l of the background and mode
        source: the mode source, or None
        observers: fixed radius observers

    Returns:
        EvolutionResult with one t* series per observer, and the energy series when requested

    Raises:
        CflViolation, GuardViolation, SupportViolation, UnsupportedObserver, EvolutionDiverged
    """
    if not 0.0 < grid.cfl <= 1.0:
        raise CflViolation(grid.cfl)
    started = time.perf_counter()
    r, values = _node_values(grid, potential)
    _check_support(grid, data, r)
    source_values = _source_values(grid, source)
    stations = _stations(grid, potential, observers)
    _check_guard(grid, stations)

    dx, dt, steps = grid.step, grid.dt, grid.steps
    ratio = dt / dx
    logger.info("Leapfrog run on %s, %d points, %d steps", grid.describe(), grid.points, steps)

    samples: Dict[str, List[Tuple[float, float]]] = {station.observer.name: [] for station in stations}

    def record(step: int, psi: np.ndarray) -> None:
        for station in stations:
            if step % station.observer.stride == 0:
                value = (1.0 - station.weight) * psi[station.index] + station.weight * psi[station.index + 1]
                samples[station.observer.name].append((step * dt - station.x, value / station.observer.radius))

    energy_stride = int(round(grid.energy_interval / dt)) if grid.energy_interval > 0.0 else 0
    energy: List[Tuple[float, float]] = []

    psi_previous, pi = data.psi(r)
    if grid.left == Boundary.ORIGIN:
        psi_previous[0], pi[0] = 0.0, 0.0
    psi = np.empty_like(psi_previous)
    laplacian = (psi_previous[2:] - 2.0 * psi_previous[1:-1] + psi_previous[:-2]) / dx ** 2
    forcing = laplacian - values[1:-1] * psi_previous[1:-1]
    if source_values is not None and source is not None:
        forcing += source.temporal(0.0) * source_values[1:-1]
    psi[1:-1] = psi_previous[1:-1] + dt * pi[1:-1] + 0.5 * dt * dt * forcing
    _apply_boundaries(grid, psi, psi_previous, ratio)
    record(0, psi_previous)
    record(1, psi)

    psi_next = np.empty_like(psi)
    for step in range(1, steps):
        psi_next[1:-1] = (2.0 * psi[1:-1] - psi_previous[1:-1]
                          + ratio * ratio * (psi[2:] - 2.0 * psi[1:-1] + psi[:-2])
                          - dt * dt * values[1:-1] * psi[1:-1])
        if source_values is not None and source is not None:
            amplitude = source.temporal(step * dt)
            if amplitude != 0.0:
                psi_next[1:-1] += dt * dt * amplitude * source_values[1:-1]
        _apply_boundaries(grid, psi_next, psi, ratio)
        if energy_stride and step % energy_stride == 0:
            energy.append((step * dt, _energy(psi_previous, psi, psi_next, values, dt, dx)))
        psi_previous, psi, psi_next = psi, psi_next, psi_previous
        record(step + 1, psi)
        if step % FINITE_CHECK_INTERVAL == 0 and not np.all(np.isfinite(psi)):
            raise EvolutionDiverged(SCHEME, step)
    if not np.all(np.isfinite(psi)):
        raise EvolutionDiverged(SCHEME, steps)

    wall_clock = time.perf_counter() - started
    logger.info("Leapfrog run finished: %d steps in %.1f s", steps, wall_clock)
    series = {}
    for name, points in samples.items():
        x, recorded = np.array(points).T
        series[name] = TimeSeries("t*", x, recorded, observer=name, metadata={"scheme": SCHEME})
    energy_series = None
    if energy:
        t, e = np.array(energy).T
        energy_series = TimeSeries("t", t, e, observer="energy", metadata={"scheme": SCHEME})
    return EvolutionResult(scheme=SCHEME, grid=grid.describe(), series=series, steps=steps,
                           wall_clock=wall_clock, energy=energy_series)
