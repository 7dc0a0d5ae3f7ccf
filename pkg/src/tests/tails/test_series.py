import unittest

import numpy as np

from pricetail.exceptions import ComputeError
from pricetail.tails.series import TimeSeries


class TestTimeSeries(unittest.TestCase):

    def setUp(self) -> None:
        self.series = TimeSeries("t*", np.arange(10.0), np.arange(10.0) ** 2, observer="r=10")

    def test_window(self):
        window = self.series.window(2.0, 4.0)
        np.testing.assert_array_equal(window.x, [2.0, 3.0, 4.0])
        np.testing.assert_array_equal(window.values, [4.0, 9.0, 16.0])
        self.assertEqual(window.observer, "r=10")

    def test_scaled_and_at(self):
        self.assertEqual(self.series.scaled(2.0).values[3], 18.0)
        self.assertAlmostEqual(float(self.series.at(np.array([2.5]))[0]), 6.5)
        self.assertEqual(len(self.series), 10)

    def test_validation(self):
        self.assertRaises(ComputeError, TimeSeries, "t*", np.arange(3.0), np.arange(4.0))
        self.assertRaises(ComputeError, TimeSeries, "t*", np.array([0.0, 2.0, 1.0]), np.zeros(3))
        self.assertRaises(ComputeError, TimeSeries, "t*", np.arange(3.0), np.array([0.0, np.nan, 1.0]))
