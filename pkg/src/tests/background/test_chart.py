import unittest

import numpy as np

from pricetail.background.chart import RadialChart, inverse_tortoise, tortoise
from pricetail.background.specs import BackgroundKind, BackgroundSpec
from pricetail.exceptions import ChartDomainError


class TestRadialChart(unittest.TestCase):

    def setUp(self) -> None:
        self.schwarzschild = BackgroundSpec(mass=1.0)
        self.flat = BackgroundSpec(kind=BackgroundKind.FLAT_POTENTIAL, mass=0.0)

    def test_tortoise_schwarzschild(self):
        self.assertAlmostEqual(tortoise(3.0, self.schwarzschild), 3.0, places=14)
        self.assertAlmostEqual(tortoise(4.0, self.schwarzschild), 4.0 + 2.0 * np.log(2.0), places=14)

    def test_tortoise_flat_is_identity(self):
        r = np.array([0.5, 1.0, 100.0])
        np.testing.assert_array_equal(tortoise(r, self.flat), r)

    def test_inverse_is_exact(self):
        x = np.array([-200.0, -60.0, -5.0, 0.0, 3.0, 26.0, 1000.0, 4200.0])
        r = inverse_tortoise(x, self.schwarzschild)
        self.assertTrue(np.all(r >= 2.0))
        back = tortoise(r[x > -30.0], self.schwarzschild)
        np.testing.assert_allclose(back, x[x > -30.0], rtol=0.0, atol=1e-12 * 4200.0)

    def test_inverse_near_horizon(self):
        chart = RadialChart(1.0)
        x = np.array([-200.0, -100.0])
        delta = chart.horizon_distance(x)
        np.testing.assert_allclose(chart.tortoise_of_distance(delta), x, rtol=1e-12)
        self.assertTrue(np.all(delta > 0.0))

    def test_inverse_round_trip_near_horizon(self):
        chart = RadialChart(1.0)
        eps = np.finfo(float).eps
        for x in (-30.0, -40.0, -60.0):
            with self.subTest(x=x):
                r = inverse_tortoise(x, self.schwarzschild)
                delta = chart.horizon_distance(x)
                bound = 1e-12 * abs(x) + (1.0 + 2.0 / delta) * eps * r
                self.assertLessEqual(abs(tortoise(r, self.schwarzschild) - x), bound)
                self.assertAlmostEqual(chart.tortoise_of_distance(delta) / x, 1.0, places=12)

    def test_inverse_scalar(self):
        r = inverse_tortoise(10.0, self.schwarzschild)
        self.assertIsInstance(r, float)
        self.assertAlmostEqual(tortoise(r, self.schwarzschild), 10.0, places=11)

    def test_domain_error(self):
        self.assertRaises(ChartDomainError, tortoise, 2.0, self.schwarzschild)
        self.assertRaises(ChartDomainError, tortoise, np.array([3.0, 1.5]), self.schwarzschild)
        self.assertRaises(ChartDomainError, tortoise, 0.0, self.flat)

    def test_dr_dx(self):
        chart = RadialChart.for_background(self.schwarzschild)
        r = np.array([2.5, 4.0, 100.0])
        slope = chart.dr_dx(r)
        self.assertTrue(np.all(slope > 0.0))
        self.assertAlmostEqual(slope[1], 0.5)
