import shutil
import tempfile
import unittest
from pathlib import Path

import numpy as np

from pricetail.api.experiment_api import ExperimentApi, separable_data
from pricetail.evolve.data import CauchyData, ForcingSpec
from pricetail.evolve.observers import Observer, ObserverKind
from pricetail.exceptions import ConfigurationError
from pricetail.generators.table_generator import CsvTable, read_csv_table
from pricetail.parsers.config_parser import AngularFactor, ExperimentConfig, ExperimentKind, InputSettings, \
    KerrSettings, ModelSettings, TailSettings
from pricetail.profiles import ProfileKind, RadialProfile


class TestExperimentApi(unittest.TestCase):

    def setUp(self) -> None:
        self.directory = Path(tempfile.mkdtemp())
        self.experiment_api = ExperimentApi()

    def tearDown(self) -> None:
        shutil.rmtree(self.directory)

    def test_verify_is_not_run_here(self):
        experiment = ExperimentConfig(kind=ExperimentKind.VERIFY)
        self.assertRaises(ConfigurationError, self.experiment_api.run, experiment, self.directory)

    def test_run_model(self):
        experiment = ExperimentConfig(kind=ExperimentKind.MODEL, name="model",
                                      model=ModelSettings(r_min=0.1, r_max=10.0, points=5), config_hash="abc")
        summary = self.experiment_api.run(experiment, self.directory)
        self.assertLess(summary["agreement"], 1e-6)
        self.assertLess(summary["near_zero_deviation"], 1e-4)
        self.assertLess(summary["bracket"], 1e-8)
        self.assertLess(summary["operator_residual"], 1e-5)

        table = read_csv_table(self.directory / "model" / "model.csv")
        self.assertEqual(table.header, ["rr", "re_u", "im_u", "re_u_ode", "im_u_ode"])
        self.assertEqual(table.rows, 5)
        self.assertEqual(table.footer["config_hash"], "abc")
        self.assertEqual(table.footer["scheme"], "quadrature+ode")

    def test_run_model_single_method(self):
        experiment = ExperimentConfig(kind=ExperimentKind.MODEL, output="single",
                                      model=ModelSettings(points=3, method="quadrature"))
        summary = self.experiment_api.run(experiment, self.directory)
        self.assertNotIn("agreement", summary)
        self.assertIn("operator_residual", summary)
        self.assertEqual(read_csv_table(self.directory / "single" / "model.csv").header, ["rr", "re_u", "im_u"])

    def test_run_kerr_constant(self):
        kerr = KerrSettings(a=0.0, r_min=4.0, r_max=20.0,
                            phi1=RadialProfile(kind=ProfileKind.BUMP, center=10.0, width=3.0))
        experiment = ExperimentConfig(kind=ExperimentKind.KERR_CONSTANT, name="kerr", kerr=kerr)
        summary = self.experiment_api.run(experiment, self.directory)
        self.assertEqual(summary["a"], 0.0)
        self.assertLess(summary["relative_difference"], 1e-6)
        table = read_csv_table(self.directory / "kerr" / "kerr.csv")
        self.assertEqual(table.columns["name"], ["a", "constant", "schwarzschild"])

    def test_run_fit_tail(self):
        x = np.arange(1.0, 2000.5, 0.5)
        table = CsvTable(footer={"config_hash": "abc"})
        table.add_column("t*", list(x))
        table.add_column("value", list(2.0 * x ** -3.0 * (1.0 + 5.0 / x)))
        table.write(self.directory / "series.csv")

        experiment = ExperimentConfig(kind=ExperimentKind.FIT_TAIL, name="refit",
                                      input=InputSettings(path=str(self.directory / "series.csv")),
                                      tail=TailSettings(window_start=100.0, window_end=2000.0, target_exponent=3.0))
        summary = self.experiment_api.run(experiment, self.directory)
        self.assertEqual(summary["observer"], "series:value")
        self.assertAlmostEqual(summary["exponent"], 3.0, delta=0.01)
        self.assertAlmostEqual(summary["coefficient"], 2.0, delta=1e-6)
        self.assertTrue((self.directory / "refit" / "tail.csv").is_file())

    def test_input_series_errors(self):
        (self.directory / "series.csv").write_text("t*,value\n1,2\n2,1\n", encoding="utf-8")
        experiment = ExperimentConfig(kind=ExperimentKind.FIT_TAIL,
                                      input=InputSettings(path=str(self.directory / "series.csv"), columns=["r=20"]))
        self.assertRaises(ConfigurationError, ExperimentApi.input_series, experiment)

        experiment = ExperimentConfig(kind=ExperimentKind.RAY_PROFILE,
                                      input=InputSettings(path=str(self.directory / "series.csv"), ratios=[0.5]))
        self.assertRaises(ConfigurationError, self.experiment_api.run, experiment, self.directory)

    def test_input_series_several_paths(self):
        for name in ("a", "b"):
            (self.directory / f"{name}.csv").write_text("u,value\n1,2\n2,1\n", encoding="utf-8")
        paths = f"{self.directory / 'a.csv'}, {self.directory / 'b.csv'}"
        experiment = ExperimentConfig(kind=ExperimentKind.FIT_TAIL, input=InputSettings(path=paths))
        series = ExperimentApi.input_series(experiment)
        self.assertEqual([item.observer for item in series], ["a:value", "b:value"])
        self.assertEqual(series[0].parameter, "u")

    def test_is_static(self):
        static = ExperimentConfig(kind=ExperimentKind.MODEL,
                                  data=CauchyData(phi0=RadialProfile(kind=ProfileKind.GAUSSIAN, center=26.0)))
        self.assertTrue(ExperimentApi.is_static(static))
        moving = ExperimentConfig(kind=ExperimentKind.MODEL,
                                  data=CauchyData(phi1=RadialProfile(kind=ProfileKind.GAUSSIAN, center=26.0)))
        self.assertFalse(ExperimentApi.is_static(moving))
        declared = ExperimentConfig(kind=ExperimentKind.MODEL, tail=TailSettings(static=True))
        self.assertTrue(ExperimentApi.is_static(declared))

    def test_predicted_coefficient(self):
        data = CauchyData(phi1=RadialProfile(kind=ProfileKind.GAUSSIAN, amplitude=1.0, center=26.0, width=1.5))
        experiment = ExperimentConfig(kind=ExperimentKind.EVOLVE, data=data,
                                      observers=[Observer(radius=10.0)])
        fixed = self.experiment_api.predicted_coefficient(experiment, Observer(radius=10.0))
        self.assertEqual(fixed, ExperimentApi.tail_constant(experiment, 10.0).value)
        self.assertIsNone(self.experiment_api.predicted_coefficient(
            experiment, Observer(kind=ObserverKind.RAY, ratio=1.0)))

        forcing = ForcingSpec(fr=RadialProfile(kind=ProfileKind.BUMP, center=10.0, width=4.0))
        experiment = ExperimentConfig(kind=ExperimentKind.EVOLVE, scheme="double_null", forcing=forcing,
                                      observers=[Observer(kind=ObserverKind.RADIATION_FIELD, v_far=6008.0)])
        scri = self.experiment_api.predicted_coefficient(experiment, experiment.observers[0])
        self.assertAlmostEqual(scri, 0.25 * ExperimentApi.tail_constant(experiment).value)

    def test_separable_data(self):
        self.assertIsNone(separable_data(RadialProfile(), AngularFactor.UNIFORM))
        data = separable_data(RadialProfile(kind=ProfileKind.GAUSSIAN, center=10.0), AngularFactor.COS_THETA)
        value = data(np.array([10.0]), np.array([np.pi]), np.array([0.3]))
        np.testing.assert_allclose(value, [-1.0])
