import unittest

import numpy as np

from pricetail.background.specs import BackgroundSpec, Mode, PotentialSpec
from pricetail.evolve.constants import predicted_constant
from pricetail.evolve.data import ForcingSpec
from pricetail.exceptions import UnsupportedBackground
from pricetail.profiles import RadialProfile, TemporalProfile
from pricetail.spectral.expansion import expansion_iterate
from pricetail.spectral.zero_energy import tail_kernel, zero_energy_solve


class TestZeroEnergy(unittest.TestCase):

    def setUp(self) -> None:
        self.spec = BackgroundSpec(mass=1.0)
        self.profile = RadialProfile(kind="bump", center=10.0, width=4.0)

    def test_tail_kernel(self):
        r = np.array([1e3, 1e4])
        np.testing.assert_allclose(tail_kernel(self.spec, r), 1.0 / r + 1.0 / r ** 2, rtol=1e-5)
        free = BackgroundSpec(kind="flat_potential", mass=0.0)
        np.testing.assert_allclose(tail_kernel(free, r), 1.0 / r)

    def test_schwarzschild_constant(self):
        solution = zero_energy_solve(self.spec, self.profile)
        self.assertAlmostEqual(solution.c0_tail / solution.c0, 1.0, delta=1e-2)
        self.assertAlmostEqual(solution.subleading / (self.spec.mass * solution.c0), 1.0, delta=0.02)
        self.assertTrue(np.all(solution.values > 0.0))
        self.assertAlmostEqual(float(solution(np.array([1e4]))[0]) * 1e4 / solution.c0, 1.0, delta=1e-3)

    def test_free_constant(self):
        solution = zero_energy_solve(BackgroundSpec(kind="flat_potential", mass=0.0), self.profile)
        self.assertAlmostEqual(solution.c0_tail / solution.c0, 1.0, delta=1e-2)
        self.assertAlmostEqual(solution.subleading / solution.c0, 0.0, delta=1e-2)

    def test_narrow_source(self):
        narrow = RadialProfile(kind="bump", center=30.0, width=0.5)
        for spec in (self.spec, BackgroundSpec(kind="flat_potential", mass=0.0)):
            with self.subTest(kind=spec.kind):
                solution = zero_energy_solve(spec, narrow)
                self.assertGreater(solution.c0, 0.0)
                self.assertAlmostEqual(solution.c0_tail / solution.c0, 1.0, delta=1e-3)

    def test_unsupported(self):
        self.assertRaises(UnsupportedBackground, zero_energy_solve, self.spec, self.profile, Mode(l=1))
        flat = BackgroundSpec(kind="flat_potential", mass=0.0, potential=PotentialSpec(amplitude=0.2))
        self.assertRaises(UnsupportedBackground, zero_energy_solve, flat, self.profile)


class TestExpansion(unittest.TestCase):

    def test_second_iterate(self):
        spec = BackgroundSpec(mass=1.0)
        profile = RadialProfile(kind="bump", center=10.0, width=4.0)
        state = expansion_iterate(spec, profile)
        self.assertAlmostEqual(state.zero.c0_tail / state.c0, 1.0, delta=1e-2)
        self.assertAlmostEqual(state.c_m, -2.0 * state.c_x)
        self.assertAlmostEqual(state.c_x, 4.0 * state.c0)
        unit = ForcingSpec(chi=TemporalProfile(), fr=profile)
        predicted = predicted_constant(spec, None, unit).value / unit.chi.integral
        self.assertLess(abs(state.c_m / predicted - 1.0), 1e-8)
        self.assertAlmostEqual(abs(state.f2_limit() - 1.0), 0.0, delta=0.02)
        self.assertAlmostEqual(abs(state.log_coefficient() - 1.0), 0.0, delta=0.05)
