"""
Predicted leading tail constants of spherically symmetric problems.

For Cauchy data the t^-3 coefficient is c = -8 m_eff int phi1 (1 - 2m/r)^-1 u0 r^2 dr, and for a forcing
chi(t) f(r) it is c = -8 m_eff (int chi dt) int f u0 r^2 dr, where m_eff is the effective mass and u0 the
zero energy state (u0 = 1 on Schwarzschild). On flat backgrounds the late time profile is c u0(r).
"""
import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from pricetail.background.extended_state import ExtendedState, solve_extended_state
from pricetail.background.potentials import effective_mass
from pricetail.background.specs import BackgroundSpec, Mode
from pricetail.evolve.data import CauchyData, ForcingSpec
from pricetail.exceptions import QuadratureNotConverged, SupportViolation, UnsupportedBackground
from pricetail.profiles import ProfileKind, RadialProfile

logger = logging.getLogger(__name__)

GAUSS_PANELS = 16
GAUSS_NODES = 48
HORIZON_NEGLIGIBLE = 1e-12


@dataclass(frozen=True)
class PredictedConstant:
    """ A predicted tail constant with the pieces it is made of """
    value: float
    effective_mass: float
    data_pairing: float
    forcing_pairing: float
    method: str
    profile_value: Optional[float] = None


def _panels(lower: float, upper: float, integrand: Callable[[np.ndarray], np.ndarray]) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_NODES)
    edges = np.linspace(lower, upper, GAUSS_PANELS + 1)
    half = 0.5 * np.diff(edges)
    centre = 0.5 * (edges[1:] + edges[:-1])
    points = centre[:, None] + half[:, None] * nodes[None, :]
    return float(np.sum(weights[None, :] * integrand(points) * half[:, None]))


def _integration_range(spec: BackgroundSpec, profile: RadialProfile,
                       divide_by_lapse: bool) -> Tuple[float, float]:
    lower, upper = profile.support
    if spec.is_schwarzschild:
        if lower <= spec.horizon and not divide_by_lapse:
            return spec.horizon, upper
        if lower <= spec.horizon:
            at_horizon = abs(float(profile(np.array([spec.horizon]))[0]))
            if at_horizon > HORIZON_NEGLIGIBLE * abs(profile.amplitude):
                raise SupportViolation(f"{profile.describe()} does not vanish at the horizon r = {spec.horizon:g}")
            lower = spec.horizon * (1.0 + 1e-9)
        return lower, upper
    return max(lower, 0.0), upper


def tail_pairing(spec: BackgroundSpec, state: ExtendedState, profile: RadialProfile, divide_by_lapse: bool,
                 method: str = "adaptive") -> float:
    """
    int f (1 - 2m/r)^-k u0 r^2 dr over the exterior, k = 1 for Cauchy data and k = 0 for forcing.

    Args:
        spec: the background
        state: its extended state
        profile: the radial profile f
        divide_by_lapse: whether to divide by 1 - 2m/r
        method: 'adaptive' (scipy quad) or 'gauss' (composite Gauss-Legendre)

    Returns:
        The pairing integral
    """
    if profile.is_zero:
        return 0.0
    lower, upper = _integration_range(spec, profile, divide_by_lapse)
    mass = spec.mass

    def integrand(r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        values = profile(r) * np.real(state.u0(r)) * r * r
        if divide_by_lapse:
            values = values * r / (r - 2.0 * mass)
        return values

    if method == "gauss":
        if np.isfinite(upper):
            return _panels(lower, upper, integrand)
        # r = lower / s maps [lower, inf) onto (0, 1]
        return _panels(0.0, 1.0, lambda s: np.where(
            s > 0.0, integrand(lower / np.maximum(s, 1e-300)) * lower / np.maximum(s, 1e-300) ** 2, 0.0))

    points = None
    if np.isfinite(upper) and profile.kind in (ProfileKind.GAUSSIAN, ProfileKind.BUMP):
        points = [profile.center]
    value, error = quad(lambda r: float(integrand(np.array([r]))[0]), lower, upper, points=points, epsabs=0.0,
                        epsrel=1e-13, limit=500)
    if not np.isfinite(value) or abs(error) > 1e-9 * max(abs(value), 1e-300):
        raise QuadratureNotConverged(f"the pairing of {profile.describe()}", error)
    return float(value)


def predicted_constant(spec: BackgroundSpec, data: Optional[CauchyData] = None,
                       forcing: Optional[ForcingSpec] = None, mode: Mode = Mode(),
                       r_obs: Optional[float] = None, method: str = "adaptive",
                       state: Optional[ExtendedState] = None) -> PredictedConstant:
    """
    The predicted coefficient of the t^-3 tail of a spherically symmetric problem.

    Args:
        spec: the background
        data: Cauchy data (only phi1 contributes at this order)
        forcing: a separable forcing chi(t) f(r)
        mode: must be l = 0
        r_obs: observation radius; on flat backgrounds the profile value c u0(r_obs) is returned as well
        method: 'adaptive' or 'gauss' quadrature
        state: a precomputed extended state of spec

    Returns:
        PredictedConstant; data and forcing contributions add up

    Raises:
        UnsupportedBackground for l != 0
    """
    if mode.l != 0:
        raise UnsupportedBackground(f"predicted constant for l = {mode.l}", spec.kind.value)
    if state is None:
        state = solve_extended_state(spec)
    mass = effective_mass(spec)
    data_pairing = 0.0 if data is None else tail_pairing(spec, state, data.phi1, True, method)
    forcing_pairing = 0.0
    if forcing is not None and not forcing.is_zero:
        forcing_pairing = forcing.chi.integral * tail_pairing(spec, state, forcing.fr, False, method)
    value = -8.0 * mass * (data_pairing + forcing_pairing)
    profile_value = None
    if r_obs is not None and not spec.is_schwarzschild:
        profile_value = float(value * np.real(state.u0(np.array([r_obs]))[0]))
    logger.debug("Predicted constant %.15g (effective mass %g, %s quadrature)", value, mass, method)
    return PredictedConstant(value=value, effective_mass=mass, data_pairing=data_pairing,
                             forcing_pairing=forcing_pairing, method=method, profile_value=profile_value)
