"""
Tail constant of Cauchy data on a Kerr exterior, by quadrature.

    c = (2m/pi) int [ -(4 m a r / Delta) d_phi phi0 - ((r^2 + a^2)^2 / Delta - a^2 sin^2 theta) phi1 ]
                    sin(theta) dr dtheta dphi,        Delta = r^2 - 2 m r + a^2

The rule is a tensor product of Gauss-Legendre in r (on the data support) and in cos(theta), and the
periodic trapezoidal rule in phi; the azimuthal derivative of phi0 is taken spectrally on the phi nodes.
Node counts are doubled until two consecutive values agree to the requested relative tolerance.
"""
import logging
from typing import Callable, Optional, Tuple

import numpy as np

from pricetail.exceptions import QuadratureNotConverged, SupportViolation

logger = logging.getLogger(__name__)

AngularProfile = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]

MAX_REFINEMENTS = 6


def outer_horizon(mass: float, a: float) -> float:
    return mass + float(np.sqrt(mass * mass - a * a))


def _azimuthal_derivative(values: np.ndarray) -> np.ndarray:
    count = values.shape[-1]
    wavenumbers = np.fft.fftfreq(count, d=1.0 / count)
    if count % 2 == 0:
        wavenumbers[count // 2] = 0.0
    return np.real(np.fft.ifft(1j * wavenumbers * np.fft.fft(values, axis=-1), axis=-1))


def _kerr_rule(phi0: Optional[AngularProfile], phi1: Optional[AngularProfile], mass: float, a: float,
               support: Tuple[float, float], nodes: Tuple[int, int, int]) -> float:
    radial_nodes, radial_weights = np.polynomial.legendre.leggauss(nodes[0])
    cos_nodes, cos_weights = np.polynomial.legendre.leggauss(nodes[1])
    azimuths = 2.0 * np.pi * np.arange(nodes[2]) / nodes[2]
    azimuth_weight = 2.0 * np.pi / nodes[2]

    r_a, r_b = support
    r = 0.5 * (r_b - r_a) * radial_nodes + 0.5 * (r_b + r_a)
    radial_weights = 0.5 * (r_b - r_a) * radial_weights
    theta = np.arccos(cos_nodes)

    rr, tt, pp = np.meshgrid(r, theta, azimuths, indexing="ij")
    delta = rr * rr - 2.0 * mass * rr + a * a
    sin_squared = np.sin(tt) ** 2
    integrand = np.zeros_like(rr)
    if phi1 is not None:
        integrand -= ((rr * rr + a * a) ** 2 / delta - a * a * sin_squared) * phi1(rr, tt, pp)
    if phi0 is not None and a != 0.0:
        integrand -= 4.0 * mass * a * rr / delta * _azimuthal_derivative(phi0(rr, tt, pp))

    # sin(theta) dtheta is absorbed by the cos(theta) rule
    total = np.einsum("i,j,ijk->", radial_weights, cos_weights, integrand) * azimuth_weight
    return float(2.0 * mass / np.pi * total)


def kerr_tail_constant(phi0: Optional[AngularProfile], phi1: Optional[AngularProfile], mass: float, a: float,
                       support: Tuple[float, float], nodes: Tuple[int, int, int] = (48, 24, 32),
                       tolerance: float = 1e-10, refine: bool = True) -> float:
    """
    The leading t^-3 coefficient of the solution with Cauchy data (phi0, phi1) on a Kerr exterior.

    Args:
        phi0, phi1: vectorised data phi(r, theta, phi); None stands for zero data
        mass: the mass m
        a: rotation parameter, |a| < m
        support: radial interval [r_a, r_b] containing the data, with r_a beyond the outer horizon
        nodes: starting node counts (radial, polar, azimuthal)
        tolerance: relative agreement required between successive refinements
        refine: when False the rule is evaluated once with the given nodes

    Returns:
        The tail constant c

    Raises:
        SupportViolation when the support reaches the horizon
        QuadratureNotConverged when refinement does not settle
    """
    if not abs(a) < mass:
        raise SupportViolation(f"|a| = {abs(a)} must be below m = {mass}")
    r_plus = outer_horizon(mass, a)
    if support[0] <= r_plus or support[1] <= support[0]:
        raise SupportViolation(f"data support [{support[0]}, {support[1]}] must lie beyond r+ = {r_plus:.12g}")
    if phi0 is None and phi1 is None:
        return 0.0

    value = _kerr_rule(phi0, phi1, mass, a, support, nodes)
    if not refine:
        return value
    counts = nodes
    for _ in range(MAX_REFINEMENTS):
        counts = (2 * counts[0], 2 * counts[1], 2 * counts[2])
        refined = _kerr_rule(phi0, phi1, mass, a, support, counts)
        change = abs(refined - value)
        logger.debug("Kerr constant with nodes %s: %.15g (change %.3e)", counts, refined, change)
        if change <= tolerance * max(abs(refined), np.finfo(float).tiny):
            return refined
        value = refined
    raise QuadratureNotConverged("the Kerr tail constant", change)
