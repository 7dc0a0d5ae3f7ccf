"""
The model solution at unit frequency in the rescaled radius rr = sigma r.

It is the outgoing solution of

    -2i rr^-1 (rr d/drr + 1) u + rr^-2 (-(rr d/drr)^2 - rr d/drr) u = rr^-2

and is available two ways:

    quadrature  u = (i / rr) ((2 gamma + log 4 - i pi) / 4 + int_0^inf exp(-2t) log(rr + i t) dt)
    ode         d(rr u)/drr = v,  v = exp(-2i rr) E1(-2i rr),  rr u ~ rr (1 - gamma - log 2 - log rr + i pi/2)

Near zero u = -log rr + i pi/2 + O(rr log rr); for large rr it is (i / 2 rr) (log rr + O(1)).

Below SERIES_CUTOFF the bracket is summed from E1(z) = -gamma - log z + Ein(z), z = -2i rr, in the form

    bracket = (expm1(z) (-gamma - log z) + exp(z) Ein(z)) / 2

which vanishes at rr = 0 without cancellation.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.special import exp1, factorial

from pricetail.exceptions import ComputeError, QuadratureNotConverged

logger = logging.getLogger(__name__)

# (2 gamma + log 4 - i pi) / 4
BRACKET_CONSTANT = (2.0 * np.euler_gamma + np.log(4.0) - 1j * np.pi) / 4.0
ODE_START = 1e-8
STENCIL_STEP = 1e-2
SERIES_CUTOFF = 1e-4
SERIES_TERMS = 10
# error estimate relative to max(1, |moment|)
QUAD_TOLERANCE = 1e-10


def _small_bracket(rr: float) -> complex:
    theta = -2.0 * rr
    z = 1j * theta
    # expm1(i theta) without cancellation
    expm1 = -2.0 * np.sin(0.5 * theta) ** 2 + 1j * np.sin(theta)
    k = np.arange(1, SERIES_TERMS + 1)
    ein = np.sum((-1.0) ** (k + 1) * z ** k / (k * factorial(k)))
    return complex(0.5 * (expm1 * (-np.euler_gamma - np.log(z)) + np.exp(z) * ein))


def _log_moment(rr: float) -> complex:
    """ int_0^inf exp(-2t) log(rr + i t) dt """
    def real_part(t: float) -> float:
        return float(np.exp(-2.0 * t) * 0.5 * np.log(rr * rr + t * t))

    def imag_part(t: float) -> float:
        return float(np.exp(-2.0 * t) * np.arctan2(t, rr))

    total = 0.0j
    for part, unit in ((real_part, 1.0), (imag_part, 1.0j)):
        points = [rr] if 0.0 < rr < 1.0 else None
        near, near_error = quad(part, 0.0, 1.0, points=points, epsabs=1e-15, epsrel=1e-13, limit=200)
        far, far_error = quad(part, 1.0, np.inf, epsabs=1e-15, epsrel=1e-13, limit=200)
        if near_error + far_error > QUAD_TOLERANCE * max(1.0, abs(near + far)):
            raise QuadratureNotConverged(f"the model log moment at rr = {rr:g}", near_error + far_error)
        total += unit * (near + far)
    return complex(total)


def model_bracket(rr: float = 0.0) -> complex:
    """ The constant plus the log moment; zero at rr = 0 """
    if rr == 0.0:
        # int_0^inf exp(-2t) (log t + i pi/2) dt = -(gamma + log 2)/2 + i pi/4
        return complex(BRACKET_CONSTANT - 0.5 * (np.euler_gamma + np.log(2.0)) + 0.25j * np.pi)
    if rr < SERIES_CUTOFF:
        return _small_bracket(rr)
    return BRACKET_CONSTANT + _log_moment(rr)


def model_quadrature(rr: float) -> complex:
    if rr <= 0.0:
        raise ComputeError(f"The model solution needs rr > 0, got {rr}")
    return complex(1j / rr * model_bracket(rr))


def model_derivative(rr: np.ndarray) -> np.ndarray:
    """ v = d(rr u)/drr = exp(-2i rr) E1(-2i rr) """
    rr = np.asarray(rr, dtype=float)
    z = -2.0j * rr
    return np.exp(z) * exp1(z)


def model_ode(rr: Sequence[float]) -> np.ndarray:
    """ u at the requested points by integrating d(rr u)/ds = rr v in s = log rr from rr = 1e-8 """
    rr = np.asarray(rr, dtype=float)
    if np.any(rr <= ODE_START):
        raise ComputeError(f"The ODE form of the model solution starts at rr = {ODE_START}")
    start = ODE_START * (1.0 - np.euler_gamma - np.log(2.0) - np.log(ODE_START) + 0.5j * np.pi)

    def rhs(s: float, state: np.ndarray) -> np.ndarray:
        point = np.exp(s)
        return np.array([point * model_derivative(np.array([point]))[0]])

    order = np.argsort(rr)
    s_values = np.log(rr[order])
    solution = solve_ivp(rhs, (np.log(ODE_START), float(s_values[-1])), np.array([start + 0.0j]), method="DOP853",
                         t_eval=s_values, rtol=1e-13, atol=1e-16)
    if not solution.success:
        raise ComputeError(f"Model ODE integration failed: {solution.message}")
    values = np.empty(rr.shape, dtype=complex)
    values[order] = solution.y[0] / rr[order]
    return values


@dataclass(frozen=True)
class ModelSolution:
    """ Samples of the model solution """
    method: str
    points: np.ndarray
    values: np.ndarray

    def agreement(self, other: "ModelSolution") -> float:
        """ max |u - u'| / max(|u|, 1) over common points """
        if not np.array_equal(self.points, other.points):
            raise ComputeError("Model solutions are sampled at different points")
        return float(np.max(np.abs(self.values - other.values) / np.maximum(np.abs(self.values), 1.0)))


def model_solution(points: Sequence[float], method: str = "quadrature") -> ModelSolution:
    """
    Evaluate the model solution.

    Args:
        points: rr > 0
        method: 'quadrature' or 'ode'

    Returns:
        ModelSolution
    """
    rr = np.asarray(points, dtype=float)
    if method == "quadrature":
        values = np.array([model_quadrature(float(point)) for point in rr])
    elif method == "ode":
        values = model_ode(rr)
    else:
        raise ComputeError(f"Unknown model solution method '{method}'")
    return ModelSolution(method=method, points=rr, values=values)


def operator_residual(solution: Callable[[float], complex], points: Sequence[float],
                      step: float = STENCIL_STEP) -> np.ndarray:
    """
    Relative residual |P u - rr^-2| / rr^-2 of the model equation, derivatives in s = log rr by five point
    stencils of width step.
    """
    residuals = []
    for rr in points:
        s = np.log(rr)
        samples = np.array([solution(float(np.exp(s + k * step))) for k in (-2, -1, 0, 1, 2)])
        first = (samples[0] - 8.0 * samples[1] + 8.0 * samples[3] - samples[4]) / (12.0 * step)
        second = (-samples[0] + 16.0 * samples[1] - 30.0 * samples[2] + 16.0 * samples[3] - samples[4]) \
            / (12.0 * step * step)
        applied = -2.0j / rr * (first + samples[2]) + (-second - first) / rr ** 2
        residuals.append(abs(applied * rr ** 2 - 1.0))
    return np.array(residuals)


def near_zero_deviation(rr: float = 1e-6) -> float:
    """ |Im(u + log rr) - pi/2|, which vanishes like rr log(1/rr) """
    return float(abs(np.imag(model_quadrature(rr) + np.log(rr)) - 0.5 * np.pi))
