"""
The outgoing resolvent of one mode applied to a radial source, in the t* frame.

With phi = exp(-i sigma t*) u(r) and psi = r exp(i sigma r*) u the mode equation becomes

    -psi'' + (V_l - sigma^2) psi = s,    s = (1 - 2m/r) r exp(i sigma r*) f

solved by variation of parameters with the homogeneous pair,

    psi = -(psi_R int_{-inf}^{r*} psi_L s + psi_L int_{r*}^{inf} psi_R s) / W
"""
import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from pricetail.background.specs import BackgroundSpec, Mode
from pricetail.exceptions import ComputeError
from pricetail.profiles import RadialProfile
from pricetail.spectral.homogeneous import MIN_DISTANCE, SUPPORT_STEPS, HomogeneousPair, homogeneous_solutions, \
    potential_of, radius_of, source_max_step
from pricetail.spectral.sigma_grid import SigmaGrid

logger = logging.getLogger(__name__)

RESIDUAL_CELLS = 400
RESIDUAL_NODES = 8


@dataclass(frozen=True)
class ResolventSample:
    """ u(r_obs) at one frequency with the diagnostics of its solve """
    sigma: float
    r_obs: float
    value: complex
    wronskian: complex
    drift: float
    series_error: float
    residual: float
    outer_radius: float


def _source(spec: BackgroundSpec, sigma: float, profile: RadialProfile):
    def source(y: float) -> complex:
        r, lapse, x = radius_of(spec, np.array([y]))
        return complex(lapse[0] * r[0] * np.exp(1j * sigma * x[0]) * profile(r)[0])
    return source


def _solution(pair: HomogeneousPair, y: np.ndarray) -> np.ndarray:
    """ rows psi and psi' of the forced solution """
    left = pair.left_values(y)
    right = pair.right_values(y)
    # right[2] runs from R_out inwards, so it is minus int_{r*}^{R_out} psi_R s
    psi = -(right[0] * left[2] - left[0] * right[2]) / pair.wronskian
    dpsi = -(right[1] * left[2] - left[1] * right[2]) / pair.wronskian
    return np.vstack([psi, dpsi])


def _cell_residual(pair: HomogeneousPair, profile: RadialProfile) -> float:
    """ max over cells of |jump of psi' - int ((V - sigma^2) psi - s) dr*|, relative to the largest cell term """
    spec, sigma = pair.background, pair.sigma
    edges = np.linspace(pair.y_left, pair.y_right, RESIDUAL_CELLS + 1)
    lower, upper = profile.support
    if np.isfinite(upper) and upper > spec.horizon:
        # extra cells across the support, with edges at its ends
        y_lower = max(float(np.log(max(lower - spec.horizon, MIN_DISTANCE))), pair.y_left)
        y_upper = min(float(np.log(upper - spec.horizon)), pair.y_right)
        if y_upper > y_lower:
            edges = np.union1d(edges, np.linspace(y_lower, y_upper, SUPPORT_STEPS + 1))
    nodes, weights = np.polynomial.legendre.leggauss(RESIDUAL_NODES)
    half = 0.5 * np.diff(edges)
    points = (0.5 * (edges[1:] + edges[:-1]))[:, None] + half[:, None] * nodes[None, :]
    flat = points.ravel()
    r, lapse, x = radius_of(spec, flat)
    psi = _solution(pair, flat)[0]
    potential = potential_of(spec, pair.mode, r, lapse)
    source = lapse * r * np.exp(1j * sigma * x) * profile(r)
    # dr* = r dy
    bulk = ((potential - sigma ** 2) * psi * r).reshape(points.shape)
    forcing = (source * r).reshape(points.shape)
    bulk_integral = np.sum(weights[None, :] * bulk, axis=1) * half
    forcing_integral = np.sum(weights[None, :] * forcing, axis=1) * half
    jumps = np.diff(_solution(pair, edges)[1])
    scale = max(float(np.max(np.abs(bulk_integral))), float(np.max(np.abs(forcing_integral))), 1e-300)
    return float(np.max(np.abs(jumps - bulk_integral + forcing_integral)) / scale)


def resolvent_apply(spec: BackgroundSpec, mode: Mode, sigma: float, profile: RadialProfile, r_obs: float,
                    outer_radius: Optional[float] = None, check_residual: bool = True) -> ResolventSample:
    """
    Evaluate u = R(sigma) f at r_obs.

    Args:
        spec: the background
        mode: the harmonic degree
        sigma: the frequency, > 0
        profile: the radial source f, supported inside the outer radius
        r_obs: the observation radius
        outer_radius: R_out (default max(50, 30/sigma))
        check_residual: evaluate the cell residual of the solution

    Returns:
        ResolventSample with u(r_obs) = exp(-i sigma r*_obs) psi(r_obs) / r_obs

    Raises:
        WronskianDrift, ResonanceDetected
        ComputeError when r_obs or the source reach beyond the outer radius
    """
    radius = outer_radius if outer_radius is not None else max(50.0, 30.0 / sigma)
    upper = profile.support[1]
    if r_obs >= radius or (not profile.is_zero and upper > radius and profile.decay_order == np.inf):
        raise ComputeError(f"Observation radius {r_obs} or source support {profile.support} beyond R_out = {radius}")
    pair = homogeneous_solutions(spec, mode, sigma, outer_radius=radius, source=_source(spec, sigma, profile),
                                 max_step=source_max_step(spec, profile.support))
    y_obs = float(np.log(r_obs - spec.horizon))
    if y_obs <= pair.y_left:
        raise ComputeError(f"Observation radius {r_obs} is inside the left end of the domain")
    psi = _solution(pair, np.array([y_obs]))[0, 0]
    _, _, x_obs = radius_of(spec, np.array([y_obs]))
    value = complex(np.exp(-1j * sigma * x_obs[0]) * psi / r_obs)
    residual = _cell_residual(pair, profile) if check_residual and not profile.is_zero else 0.0
    logger.debug("R(%g) f at r = %g: %s (residual %.2e)", sigma, r_obs, value, residual)
    return ResolventSample(sigma=sigma, r_obs=r_obs, value=value, wronskian=pair.wronskian, drift=pair.drift,
                           series_error=pair.series_error, residual=residual, outer_radius=radius)


def resolvent_sweep(spec: BackgroundSpec, mode: Mode, grid: SigmaGrid, profile: RadialProfile,
                    r_obs: float, check_residual: bool = False) -> List[ResolventSample]:
    """ resolvent_apply over every frequency of the grid, each with its own outer radius """
    return [resolvent_apply(spec, mode, float(sigma), profile, r_obs, grid.outer_radius(float(sigma)),
                            check_residual) for sigma in grid.values]
