import unittest

import numpy as np
from pydantic import ValidationError

from pricetail.evolve.grids import Boundary, CauchyGrid, NullGrid
from pricetail.evolve.observers import Observer, ObserverKind


class TestGrids(unittest.TestCase):

    def test_cauchy_grid(self):
        grid = CauchyGrid(x_min=-50.0, x_max=150.0, step=0.1, t_end=40.0)
        self.assertEqual(grid.points, 2001)
        self.assertAlmostEqual(grid.dt, 0.05)
        self.assertEqual(grid.steps, 800)
        self.assertAlmostEqual(grid.nodes[-1], 150.0)
        self.assertEqual(grid.refined().points, 4001)
        self.assertIn("sommerfeld/excision", grid.describe())

    def test_cauchy_grid_validation(self):
        self.assertRaises(ValidationError, CauchyGrid, x_min=10.0, x_max=0.0)
        self.assertRaises(ValidationError, CauchyGrid, right=Boundary.ORIGIN)
        self.assertRaises(ValidationError, CauchyGrid, step=0.0)

    def test_null_grid(self):
        grid = NullGrid(u0=-20.0, v0=8.0, h=0.5, nu=100, nv=200)
        self.assertEqual(grid.u_end, 30.0)
        self.assertEqual(grid.v_end, 108.0)
        self.assertEqual(grid.corner, 14.0)
        np.testing.assert_allclose(grid.v_values[:3], [8.0, 8.5, 9.0])
        refined = grid.refined()
        self.assertEqual((refined.h, refined.nu, refined.nv), (0.25, 200, 400))
        self.assertEqual(refined.v_end, grid.v_end)


class TestObservers(unittest.TestCase):

    def test_names(self):
        self.assertEqual(Observer(radius=10.0).name, "r=10")
        self.assertEqual(Observer(kind=ObserverKind.RADIATION_FIELD, v_far=6008.0).name, "scri(v=6008)")
        self.assertEqual(Observer(kind="ray", ratio=0.5).name, "ray(t*/r=0.5)")

    def test_parameter(self):
        self.assertEqual(Observer(radius=10.0).parameter, "t*")
        self.assertEqual(Observer(kind="ray", ratio=1.0).parameter, "u")

    def test_validation(self):
        self.assertRaises(ValidationError, Observer)
        self.assertRaises(ValidationError, Observer, kind="radiation_field")
        self.assertRaises(ValidationError, Observer, kind="ray", ratio=0.0)
        self.assertRaises(ValidationError, Observer, radius=10.0, stride=0)
