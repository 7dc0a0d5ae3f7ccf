import unittest

import numpy as np
from scipy.integrate import quad

from pricetail.background.specs import BackgroundSpec, Mode, PotentialSpec
from pricetail.evolve.constants import predicted_constant
from pricetail.evolve.data import CauchyData, ForcingSpec
from pricetail.evolve.sources import reduce_to_mode
from pricetail.exceptions import SupportViolation, UnsupportedBackground
from pricetail.profiles import BUMP_INTEGRAL, RadialProfile, TemporalProfile


class TestPredictedConstant(unittest.TestCase):

    def setUp(self) -> None:
        self.spec = BackgroundSpec(mass=1.0)
        self.data = CauchyData(phi1=RadialProfile(kind="gaussian", center=26.0, width=1.5))
        self.forcing = ForcingSpec(chi=TemporalProfile(kind="bump", center=10.0, width=10.0),
                                   fr=RadialProfile(kind="bump", center=10.0, width=4.0))

    def test_cauchy_data(self):
        expected, _ = quad(lambda r: np.exp(-((r - 26.0) / 1.5) ** 2) * r ** 3 / (r - 2.0), 14.0, 38.0,
                           epsabs=0.0, epsrel=1e-13)
        predicted = predicted_constant(self.spec, data=self.data)
        self.assertAlmostEqual(predicted.value / (-8.0 * expected), 1.0, delta=1e-10)
        self.assertEqual(predicted.effective_mass, 1.0)
        self.assertEqual(predicted.forcing_pairing, 0.0)
        self.assertIsNone(predicted.profile_value)

    def test_time_symmetric_data(self):
        data = CauchyData(phi0=RadialProfile(kind="gaussian", center=26.0, width=1.5))
        self.assertEqual(predicted_constant(self.spec, data=data).value, 0.0)

    def test_forcing(self):
        profile = self.forcing.fr
        expected, _ = quad(lambda r: float(profile(np.array([r]))[0]) * r * r, 6.0, 14.0, epsabs=0.0, epsrel=1e-13)
        predicted = predicted_constant(self.spec, forcing=self.forcing)
        self.assertAlmostEqual(predicted.forcing_pairing / (10.0 * BUMP_INTEGRAL * expected), 1.0, delta=1e-9)
        self.assertAlmostEqual(predicted.value, -8.0 * predicted.forcing_pairing)

    def test_quadratures_agree(self):
        adaptive = predicted_constant(self.spec, data=self.data, forcing=self.forcing)
        gauss = predicted_constant(self.spec, data=self.data, forcing=self.forcing, method="gauss")
        self.assertAlmostEqual(gauss.value / adaptive.value, 1.0, delta=1e-7)

    def test_flat_profile_value(self):
        flat = BackgroundSpec(kind="flat_potential", mass=0.0, potential=PotentialSpec(amplitude=0.2))
        predicted = predicted_constant(flat, data=self.data, r_obs=20.0)
        self.assertAlmostEqual(predicted.effective_mass, 0.1)
        self.assertIsNotNone(predicted.profile_value)
        self.assertLess(abs(predicted.profile_value), abs(predicted.value))

    def test_higher_modes_unsupported(self):
        self.assertRaises(UnsupportedBackground, predicted_constant, self.spec, self.data, None, Mode(l=1))

    def test_data_at_horizon(self):
        data = CauchyData(phi1=RadialProfile(kind="gaussian", center=3.0, width=1.0))
        self.assertRaises(SupportViolation, predicted_constant, self.spec, data)


class TestModeSource(unittest.TestCase):

    def test_spatial_factor(self):
        spec = BackgroundSpec(mass=1.0)
        forcing = ForcingSpec(chi=TemporalProfile(kind="bump", center=10.0, width=10.0),
                              fr=RadialProfile(kind="bump", center=10.0, width=4.0))
        source = reduce_to_mode(spec, Mode(l=0), forcing)
        x = np.array([10.0 + 2.0 * np.log(8.0)])
        self.assertAlmostEqual(source.spatial(x)[0], 0.8 * 10.0 * np.exp(-1.0), places=10)
        self.assertAlmostEqual(source.temporal(10.0), np.exp(-1.0))
        self.assertEqual(source.temporal(25.0), 0.0)

    def test_zero_source(self):
        source = reduce_to_mode(BackgroundSpec(mass=1.0), Mode(l=0), None)
        self.assertTrue(source.is_zero)
        np.testing.assert_array_equal(source(5.0, np.array([0.0, 10.0])), 0.0)
