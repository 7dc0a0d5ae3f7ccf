"""
Characteristic evolution of psi_uv = -(V_l psi - S) / 4 on the double null grid u = t - r*, v = t + r*.

Every diamond with south corner (u, v) is closed by

    psi_N = psi_E + psi_W - psi_S - (h^2/8) V_l(r*_c) (psi_E + psi_W) + (h^2/4) S(t_c, r*_c)

with r*_c = (v - u)/2 and t_c = (u + v)/2 + h/2. The sweep runs over anti-diagonals n = k + j, so that
only two previous diagonals are kept and each diagonal is one vectorised update.

Observers are compiled up front into sample plans: entries (diagonal, k, weight, slot) that are
accumulated into the output slots as the sweep passes each diagonal.
"""
import logging
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from pricetail.background.potentials import EffectivePotential
from pricetail.evolve.data import CharacteristicData
from pricetail.evolve.grids import NullGrid
from pricetail.evolve.observers import Observer, ObserverKind
from pricetail.evolve.result import EvolutionResult
from pricetail.evolve.sources import ModeSource
from pricetail.exceptions import ChartFloorViolation, EvolutionDiverged, SupportViolation
from pricetail.tails.series import TimeSeries

logger = logging.getLogger(__name__)

SCHEME = "double_null"
FINITE_CHECK_INTERVAL = 1000


@dataclass
class _SamplePlan:
    observer: Observer
    abscissae: np.ndarray
    scale: np.ndarray
    diagonals: np.ndarray
    ks: np.ndarray
    weights: np.ndarray
    slots: np.ndarray


def _radiation_plan(grid: NullGrid, observer: Observer) -> _SamplePlan:
    assert observer.v_far is not None
    j_far = int(round((observer.v_far - grid.v0) / grid.h))
    if not 0 <= j_far <= grid.nv:
        raise SupportViolation(f"observer {observer.name} is outside v in [{grid.v0:g}, {grid.v_end:g}]")
    ks = np.arange(0, grid.nu + 1, observer.stride)
    slots = np.arange(ks.size)
    return _SamplePlan(observer, grid.u_values[ks], np.ones(ks.size), ks + j_far, ks, np.ones(ks.size), slots)


def _fixed_radius_plan(grid: NullGrid, potential: EffectivePotential, observer: Observer) -> _SamplePlan:
    assert observer.radius is not None
    x_obs = float(potential.chart.tortoise(observer.radius))
    target = (2.0 * x_obs - (grid.v0 - grid.u0)) / grid.h
    n = np.arange(grid.nu + grid.nv + 1)
    parity = n % 2
    lower = parity + 2 * np.floor((target - parity) / 2.0).astype(int)
    k0 = (n - lower) // 2
    k1 = k0 - 1
    valid = (k1 >= 0) & (k0 <= grid.nu) & (n - k0 >= 0) & (n - k1 <= grid.nv)
    n, lower, k0, k1 = n[valid], lower[valid], k0[valid], k1[valid]
    keep = np.arange(n.size) % observer.stride == 0
    n, lower, k0, k1 = n[keep], lower[keep], k0[keep], k1[keep]
    weight = 0.5 * (target - lower)
    slots = np.arange(n.size)
    t_star = 0.5 * (grid.u0 + grid.v0 + n * grid.h) - x_obs
    return _SamplePlan(observer, t_star, np.full(n.size, 1.0 / observer.radius),
                       np.concatenate([n, n]), np.concatenate([k0, k1]),
                       np.concatenate([1.0 - weight, weight]), np.concatenate([slots, slots]))


def _ray_plan(grid: NullGrid, potential: EffectivePotential, observer: Observer) -> _SamplePlan:
    assert observer.ratio is not None
    ks = np.arange(0, grid.nu + 1, observer.stride)
    u = grid.u_values[ks]
    r = u / observer.ratio
    inside = r > potential.chart.floor * (1.0 + 1e-9) + 1e-12
    ks, u, r = ks[inside], u[inside], r[inside]
    x = np.asarray(potential.chart.tortoise(r)) if r.size else r
    position = (u + 2.0 * x - grid.v0) / grid.h
    j0 = np.floor(position).astype(int)
    valid = (j0 >= 0) & (j0 + 1 <= grid.nv)
    ks, u, r, j0, position = ks[valid], u[valid], r[valid], j0[valid], position[valid]
    weight = position - j0
    slots = np.arange(ks.size)
    return _SamplePlan(observer, u, 1.0 / r, np.concatenate([ks + j0, ks + j0 + 1]), np.concatenate([ks, ks]),
                       np.concatenate([1.0 - weight, weight]), np.concatenate([slots, slots]))


def _plans(grid: NullGrid, potential: EffectivePotential, observers: Sequence[Observer]) -> List[_SamplePlan]:
    plans = []
    for observer in observers:
        if observer.kind == ObserverKind.RADIATION_FIELD:
            plan = _radiation_plan(grid, observer)
        elif observer.kind == ObserverKind.FIXED_RADIUS:
            plan = _fixed_radius_plan(grid, potential, observer)
        else:
            plan = _ray_plan(grid, potential, observer)
        if plan.abscissae.size == 0:
            raise SupportViolation(f"observer {observer.name} records no samples on {grid.describe()}")
        plans.append(plan)
    return plans


def _check_forcing(grid: NullGrid, potential: EffectivePotential, source: ModeSource) -> None:
    assert source.forcing is not None
    t_a, _ = source.forcing.time_support
    r_a, r_b = source.forcing.fr.support
    if r_a <= potential.chart.floor or not np.isfinite(r_b):
        raise SupportViolation(f"forcing support [{r_a:g}, {r_b:g}] must be a compact subset of the exterior")
    x_a, x_b = potential.chart.tortoise(r_a), potential.chart.tortoise(r_b)
    if grid.u0 > t_a - x_b or grid.v0 > t_a + x_a:
        raise SupportViolation(f"initial rays u0 = {grid.u0:g}, v0 = {grid.v0:g} must lie in the past of the "
                               f"forcing (u0 <= {t_a - x_b:.6g}, v0 <= {t_a + x_a:.6g})")


def evolve_double_null(grid: NullGrid, data: CharacteristicData, potential: EffectivePotential,
                       source: Optional[ModeSource], observers: Sequence[Observer]) -> EvolutionResult:
    """
    Evolve characteristic data (and forcing) with the diamond scheme.

    Args:
        grid: the double null grid
        data: psi(u0, v) = g(v) on the first outgoing ray, psi(u, v0) = g(v0) on the first ingoing ray
        potential: V_l of the background and mode
        source: the mode source, or None; its support must lie to the future of both initial rays
        observers: radiation field, fixed radius and ray observers

    Returns:
        EvolutionResult with one series per observer

    Raises:
        ChartFloorViolation when a flat background grid reaches r* <= 0
        SupportViolation, EvolutionDiverged
    """
    started = time.perf_counter()
    h, nu, nv = grid.h, grid.nu, grid.nv
    first = 1 - nu
    offsets = np.arange(first, nv)
    centres = 0.5 * (grid.v0 - grid.u0 + offsets * h)
    if not potential.background.is_schwarzschild and centres[0] <= 0.0:
        raise ChartFloorViolation(float(centres[0]))
    damping = (h * h / 8.0) * np.asarray(potential.of_tortoise(centres))
    forcing = None
    if source is not None and not source.is_zero:
        _check_forcing(grid, potential, source)
        forcing = (h * h / 4.0) * source.spatial(centres)

    plans = _plans(grid, potential, observers)
    outputs = [np.zeros(plan.abscissae.size) for plan in plans]
    empty = np.zeros(0, dtype=int)
    diagonals = np.concatenate([plan.diagonals for plan in plans] + [empty])
    ks = np.concatenate([plan.ks for plan in plans] + [empty])
    weights = np.concatenate([plan.weights for plan in plans] + [np.zeros(0)])
    owners = np.concatenate([np.full(plan.diagonals.size, index) for index, plan in enumerate(plans)] + [empty])
    slots = np.concatenate([plan.slots for plan in plans] + [empty])
    order = np.argsort(diagonals, kind="stable")
    diagonals, ks, weights, owners, slots = diagonals[order], ks[order], weights[order], owners[order], slots[order]
    last = nu + nv
    bounds = np.searchsorted(diagonals, np.arange(last + 2))

    logger.info("Double null run on %s, %d diamonds", grid.describe(), nu * nv)
    g = data.ingoing
    corner_value = float(g(np.asarray(grid.v0)))
    older = np.zeros(nu + 1)
    previous = np.zeros(nu + 1)
    current = np.zeros(nu + 1)
    for n in range(last + 1):
        low, high = max(1, n - nv), min(nu, n - 1)
        if high >= low:
            k = np.arange(low, high + 1)
            east = previous[low - 1:high]
            west = previous[low:high + 1]
            south = older[low - 1:high]
            index = n - 2 * k - first
            current[low:high + 1] = east + west - south - damping[index] * (east + west)
            if forcing is not None and source is not None:
                amplitude = source.temporal(0.5 * (grid.u0 + grid.v0 + (n - 1) * h))
                if amplitude != 0.0:
                    current[low:high + 1] += amplitude * forcing[index]
        if n <= nv:
            current[0] = float(g(np.asarray(grid.v0 + n * h)))
        if n <= nu:
            current[n] = corner_value

        start, stop = bounds[n], bounds[n + 1]
        if stop > start:
            sampled = weights[start:stop] * current[ks[start:stop]]
            for owner in np.unique(owners[start:stop]):
                mine = owners[start:stop] == owner
                np.add.at(outputs[owner], slots[start:stop][mine], sampled[mine])

        if n % FINITE_CHECK_INTERVAL == 0:
            valid = current[max(0, n - nv):min(nu, n) + 1]
            if not np.all(np.isfinite(valid)):
                raise EvolutionDiverged(SCHEME, n)
        older, previous, current = previous, current, older

    wall_clock = time.perf_counter() - started
    logger.info("Double null run finished: %d diagonals in %.1f s", last + 1, wall_clock)
    series = {}
    for plan, output in zip(plans, outputs):
        name = plan.observer.name
        series[name] = TimeSeries(plan.observer.parameter, plan.abscissae, output * plan.scale, observer=name,
                                  metadata={"scheme": SCHEME})
    return EvolutionResult(scheme=SCHEME, grid=grid.describe(), series=series, steps=nu * nv,
                           wall_clock=wall_clock)
