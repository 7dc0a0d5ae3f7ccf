import unittest

import numpy as np

from pricetail.background.extended_state import solve_extended_state, static_kernel_order, \
    static_kernel_residual
from pricetail.background.specs import BackgroundKind, BackgroundSpec, Mode, PotentialSpec
from pricetail.exceptions import UnsupportedBackground


class TestExtendedState(unittest.TestCase):

    def setUp(self) -> None:
        self.schwarzschild = BackgroundSpec(mass=1.0)
        self.flat = BackgroundSpec(kind=BackgroundKind.FLAT_POTENTIAL, mass=0.0,
                                   potential=PotentialSpec(amplitude=0.2))

    def test_trivial_state(self):
        state = solve_extended_state(self.schwarzschild)
        self.assertTrue(state.is_trivial)
        np.testing.assert_array_equal(state.u0(np.array([3.0, 100.0])), [1.0, 1.0])
        free = solve_extended_state(BackgroundSpec(kind="flat_potential", mass=0.0))
        self.assertTrue(free.is_trivial)

    def test_flat_state(self):
        state = solve_extended_state(self.flat)
        self.assertFalse(state.is_trivial)
        self.assertGreater(state.origin_value(), 0.0)
        self.assertLess(state.origin_value(), 1.0)
        far = state.u0(np.array([1e5]))[0]
        self.assertAlmostEqual(far, 1.0, delta=1e-3)
        self.assertLess(state.residual, 1e-6)

    def test_pairing(self):
        state = solve_extended_state(self.schwarzschild)
        value = state.pairing(lambda r: np.ones_like(r), (3.0, 6.0))
        self.assertAlmostEqual(value, (6.0 ** 3 - 3.0 ** 3) / 3.0, places=10)

    def test_static_kernel_exact(self):
        self.assertLess(static_kernel_residual(self.schwarzschild, Mode(l=0)), 1e-10)
        self.assertLess(static_kernel_residual(self.schwarzschild, Mode(l=1)), 1e-10)

    def test_static_kernel_order(self):
        for label, spec, mode in (("l=0", self.schwarzschild, Mode(l=0)), ("l=1", self.schwarzschild, Mode(l=1)),
                                  ("flat", self.flat, Mode(l=0))):
            with self.subTest(background=label):
                self.assertAlmostEqual(static_kernel_order(spec, mode), 2.0, delta=0.2)

    def test_flat_residual_decreases_under_refinement(self):
        residuals = [static_kernel_residual(self.flat, Mode(l=0), step) for step in (0.4, 0.2, 0.1, 0.05, 0.025)]
        self.assertTrue(all(finer < coarser for coarser, finer in zip(residuals, residuals[1:])))
        self.assertLess(static_kernel_residual(self.flat, Mode(l=0)), 1e-6)

    def test_static_kernel_unsupported(self):
        self.assertRaises(UnsupportedBackground, static_kernel_residual, self.schwarzschild, Mode(l=2))
        self.assertRaises(UnsupportedBackground, static_kernel_residual, self.flat, Mode(l=1))
