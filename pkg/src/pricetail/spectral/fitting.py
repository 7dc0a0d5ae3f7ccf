"""
Low-frequency fit of resolvent samples,

    u(sigma) = a0 + a1 sigma + a2 sigma^2 + b sigma^2 log sigma + a3 sigma^3 + b3 sigma^3 log sigma

by complex least squares on column-scaled basis functions.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Sequence

import numpy as np

from pricetail.exceptions import ComputeError, IllConditionedFit, UnstableFit

logger = logging.getLogger(__name__)

BASIS = ("a0", "a1", "a2", "b", "a3", "b3")
CONDITION_LIMIT = 1e12
STABILITY_LIMIT = 0.05
MIN_SAMPLES = 12
MIN_DECADES = 1.5


@dataclass(frozen=True)
class SigmaFit:
    """ Fitted coefficients keyed by BASIS, with the fit diagnostics """
    coefficients: Dict[str, complex]
    condition: float
    residual: float
    stability: float

    @property
    def b(self) -> complex:
        return self.coefficients["b"]

    @property
    def a2(self) -> complex:
        return self.coefficients["a2"]


def _design(sigma: np.ndarray) -> np.ndarray:
    log = np.log(sigma)
    return np.column_stack([np.ones_like(sigma), sigma, sigma ** 2, sigma ** 2 * log, sigma ** 3,
                            sigma ** 3 * log]).astype(complex)


def _solve(sigma: np.ndarray, values: np.ndarray):
    matrix = _design(sigma)
    scale = np.max(np.abs(matrix), axis=0)
    scaled = matrix / scale
    solution, _, _, singular = np.linalg.lstsq(scaled, values, rcond=None)
    condition = float(singular[0] / singular[-1]) if singular[-1] > 0.0 else np.inf
    coefficients = solution / scale
    residual = float(np.linalg.norm(matrix @ coefficients - values) / max(np.linalg.norm(values), 1e-300))
    return coefficients, condition, residual


def fit_sigma_series(sigma: Sequence[float], values: Sequence[complex]) -> SigmaFit:
    """
    Fit the low-frequency expansion of u(sigma).

    Args:
        sigma: at least 12 positive frequencies spanning at least 1.5 decades
        values: u at those frequencies

    Returns:
        SigmaFit

    Raises:
        IllConditionedFit when the scaled design matrix has condition number above 1e12
        UnstableFit when refitting without the two largest frequencies moves b by more than 5%
    """
    sigma = np.asarray(sigma, dtype=float)
    values = np.asarray(values, dtype=complex)
    if sigma.shape != values.shape or sigma.size < MIN_SAMPLES or np.any(sigma <= 0.0):
        raise ComputeError(f"The sigma fit needs at least {MIN_SAMPLES} positive frequencies with matching values")
    if np.log10(sigma.max() / sigma.min()) < MIN_DECADES:
        raise ComputeError(f"The sigma fit needs at least {MIN_DECADES} decades of frequencies")
    order = np.argsort(sigma)
    sigma, values = sigma[order], values[order]

    coefficients, condition, residual = _solve(sigma, values)
    if condition > CONDITION_LIMIT:
        raise IllConditionedFit(condition)
    reduced, _, _ = _solve(sigma[:-2], values[:-2])
    b = coefficients[3]
    stability = float(abs(reduced[3] - b) / abs(b)) if b != 0.0 else float(abs(reduced[3]))
    if stability > STABILITY_LIMIT:
        raise UnstableFit("b", stability)
    logger.info("Sigma fit: b = %s, a2 = %s (condition %.2e, residual %.2e)", b, coefficients[2], condition,
                residual)
    return SigmaFit(coefficients={name: complex(value) for name, value in zip(BASIS, coefficients)},
                    condition=condition, residual=residual, stability=stability)
