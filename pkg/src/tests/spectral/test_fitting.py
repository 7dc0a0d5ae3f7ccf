import unittest

import numpy as np

from pricetail.exceptions import ComputeError
from pricetail.spectral.fitting import BASIS, fit_sigma_series


def expansion(sigma: np.ndarray) -> np.ndarray:
    return 1.0 + 2.0 * sigma + (0.5 + 1.0j) * sigma ** 2 - 3.0 * sigma ** 2 * np.log(sigma) + 4.0 * sigma ** 3


class TestSigmaFit(unittest.TestCase):

    def test_exact_expansion(self):
        sigma = np.geomspace(1e-3, 5e-2, 24)
        fit = fit_sigma_series(sigma, expansion(sigma))
        self.assertEqual(tuple(fit.coefficients), BASIS)
        self.assertAlmostEqual(abs(fit.b - (-3.0)), 0.0, delta=1e-4)
        self.assertAlmostEqual(abs(fit.a2 - (0.5 + 1.0j)), 0.0, delta=1e-3)
        self.assertAlmostEqual(abs(fit.coefficients["a0"] - 1.0), 0.0, delta=1e-8)
        self.assertLess(fit.residual, 1e-10)
        self.assertLess(fit.stability, 0.05)

    def test_next_order_terms_on_shipped_window(self):
        sigma = np.geomspace(2e-4, 1e-2, 24)
        values = expansion(sigma) + (-1.0 + 2.0j) * sigma ** 3 * np.log(sigma) + 5.0 * sigma ** 4
        fit = fit_sigma_series(sigma, values)
        self.assertAlmostEqual(fit.b.real, -3.0, delta=1e-2)
        self.assertAlmostEqual(fit.a2.imag, 1.0, delta=1e-2)
        self.assertLess(fit.stability, 0.05)

    def test_unordered_samples(self):
        sigma = np.geomspace(1e-3, 5e-2, 24)
        shuffled = sigma[::-1]
        fit = fit_sigma_series(shuffled, expansion(shuffled))
        self.assertAlmostEqual(abs(fit.b - (-3.0)), 0.0, delta=1e-4)

    def test_too_few_samples(self):
        sigma = np.geomspace(1e-3, 5e-2, 11)
        self.assertRaises(ComputeError, fit_sigma_series, sigma, expansion(sigma))

    def test_too_narrow(self):
        sigma = np.geomspace(1e-2, 5e-2, 24)
        self.assertRaises(ComputeError, fit_sigma_series, sigma, expansion(sigma))

    def test_non_positive(self):
        sigma = np.linspace(0.0, 5e-2, 24)
        self.assertRaises(ComputeError, fit_sigma_series, sigma, np.ones(24))
