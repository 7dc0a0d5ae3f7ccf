import os
import shutil
import tempfile
import unittest
from pathlib import Path
from types import SimpleNamespace
from unittest.mock import patch

from pricetail.api.acceptance_api import CRITERIA, ERROR, FAIL, PASS, SKIP, AcceptanceApi, AcceptanceCriteria, \
    Checks, CriterionResult, fixture_profile, run_criterion
from pricetail.exceptions import ComputeError, ConfigurationError
from pricetail.generators.table_generator import read_csv_table
from pricetail.profiles import ProfileKind

SLOW = unittest.skipUnless(os.environ.get("PRICETAIL_SLOW_TESTS") == "1", "set PRICETAIL_SLOW_TESTS=1 to run")

A9_CONFIG = """
[A9]
v = 0, 0.25, 1
tolerance = 1e-4
"""


class TestChecks(unittest.TestCase):

    def test_within(self):
        checks = Checks()
        self.assertTrue(checks.within("exponent", 3.02, 3.0, 0.1))
        self.assertFalse(checks.within("ratio", 1.3, 1.0, 0.1))
        self.assertEqual(checks.values, {"exponent": 3.02, "ratio": 1.3})
        result = checks.result("A1")
        self.assertEqual(result.status, FAIL)
        self.assertEqual(result.measured, "exponent=3.02; ratio=1.3")
        self.assertEqual(result.detail, "ratio = 1.3 outside 1 ± 0.1")

    def test_below_and_holds(self):
        checks = Checks()
        self.assertTrue(checks.below("residual", 1e-12, 1e-10))
        self.assertTrue(checks.holds("increasing", True, "LPI increasing"))
        self.assertEqual(checks.result("A12").status, PASS)
        self.assertFalse(checks.below("residual", float("nan"), 1e-10))
        self.assertFalse(checks.holds("increasing", False, "LPI increasing"))
        self.assertEqual(len(checks.failures), 2)

    def test_criterion_result(self):
        self.assertTrue(CriterionResult("A1", SKIP).passed)
        self.assertFalse(CriterionResult("A1", ERROR).passed)
        self.assertEqual(list(CriterionResult("A1", PASS).as_row()),
                         ["criterion", "status", "measured", "expected", "detail"])

    def test_fixture_profile(self):
        profile = fixture_profile("bump:8:3")
        self.assertEqual(profile.kind, ProfileKind.BUMP)
        self.assertEqual(profile.support, (5.0, 11.0))


class TestAcceptanceApi(unittest.TestCase):

    def setUp(self) -> None:
        self.directory = Path(tempfile.mkdtemp())
        self.config_path = self.directory / "acceptance.ini"
        self.config_path.write_text(A9_CONFIG, encoding="utf-8")
        self.acceptance_api = AcceptanceApi(config_path=self.config_path)

    def tearDown(self) -> None:
        shutil.rmtree(self.directory)

    def test_select(self):
        self.assertEqual(AcceptanceApi.select([], "full"), (list(CRITERIA), []))
        self.assertEqual(AcceptanceApi.select(["a9", "A8"], "quick"), (["A8", "A9"], []))
        self.assertEqual(AcceptanceApi.select(["A9", "A1"], "quick"), (["A9"], ["A1"]))
        run, skipped = AcceptanceApi.select([], "quick")
        self.assertEqual(skipped, ["A1", "A2", "A3", "A4", "A5", "A6"])
        self.assertEqual(len(run), 7)
        self.assertRaises(ConfigurationError, AcceptanceApi.select, ["A14"], "full")
        self.assertRaises(ConfigurationError, AcceptanceApi.select, [], "medium")

    def test_shipped_config_has_every_criterion(self):
        config = AcceptanceApi().config
        for name in CRITERIA:
            self.assertIn(name, config)

    def test_run_criterion(self):
        result = run_criterion("A9", {"v": "0, 1", "tolerance": "1e-4"}, self.directory)
        self.assertEqual(result.status, PASS)
        table = read_csv_table(self.directory / "A9.csv")
        self.assertEqual(table.columns["name"], ["I(0) - closed form", "I(1) - closed form"])
        self.assertEqual(table.footer["scheme"], "A9")

    def test_run_criterion_error(self):
        def failing(section, checks):
            checks.record("partial", 1.0)
            raise ComputeError("no convergence")

        with patch.dict(CRITERIA, {"A9": failing}):
            result = run_criterion("A9", {}, self.directory)
        self.assertEqual(result.status, ERROR)
        self.assertEqual(result.detail, "ComputeError: no convergence")
        self.assertTrue((self.directory / "A9.csv").is_file())

    def test_run_criterion_missing_parameter(self):
        result = run_criterion("A9", {"v": "0"}, self.directory)
        self.assertEqual(result.status, ERROR)
        self.assertIn("tolerance", result.detail)

    def test_run(self):
        results = self.acceptance_api.run(self.directory / "out", ["A9", "A1"], "quick")
        self.assertEqual([(result.criterion, result.status) for result in results], [("A1", SKIP), ("A9", PASS)])
        self.assertTrue((self.directory / "out" / "acceptance" / "A9.csv").is_file())
        self.assertFalse((self.directory / "out" / "acceptance" / "A1.csv").exists())

    def test_run_missing_section(self):
        self.assertRaises(ConfigurationError, self.acceptance_api.run, self.directory / "out", ["A8"], "full")

    def test_run_against_baseline(self):
        self.acceptance_api.run(self.directory / "first", ["A9"])
        baseline = self.directory / "first" / "acceptance"
        results = self.acceptance_api.run(self.directory / "second", ["A9"], baseline=baseline)
        self.assertEqual(results[0].status, PASS)

        stored = read_csv_table(baseline / "A9.csv")
        stored.columns["value"][0] = "0.5"
        stored.write(baseline / "A9.csv")
        results = self.acceptance_api.run(self.directory / "third", ["A9"], baseline=baseline)
        self.assertEqual(results[0].status, FAIL)
        self.assertIn("A9.csv: 1 rows differ", results[0].detail)

    def test_missing_baseline_file(self):
        (self.directory / "empty").mkdir()
        with patch("pricetail.api.acceptance_api.logger") as logger_mock:
            results = self.acceptance_api.run(self.directory / "out", ["A9"], baseline=self.directory / "empty")
        self.assertEqual(results[0].status, PASS)
        logger_mock.warning.assert_called_once()


class TestShippedCriteria(unittest.TestCase):

    def setUp(self) -> None:
        self.directory = Path(tempfile.mkdtemp())
        self.config = AcceptanceApi().config

    def tearDown(self) -> None:
        shutil.rmtree(self.directory)

    def test_oscillatory_integral(self):
        self.assertEqual(run_criterion("A9", self.config["A9"], self.directory).status, PASS)

    def test_inverse_fourier(self):
        self.assertEqual(run_criterion("A11", self.config["A11"], self.directory).status, PASS)

    def test_model_solution(self):
        result = run_criterion("A8", self.config["A8"], self.directory)
        self.assertEqual(result.status, PASS, result.detail)

    def test_expansion_constants(self):
        result = run_criterion("A10", self.config["A10"], self.directory)
        self.assertEqual(result.status, PASS, result.detail)

    def test_static_kernel(self):
        result = run_criterion("A12", self.config["A12"], self.directory)
        self.assertEqual(result.status, PASS, result.detail)

    @SLOW
    def test_singular_coefficient(self):
        result = run_criterion("A7", self.config["A7"], self.directory)
        self.assertEqual(result.status, PASS, result.detail)

    @SLOW
    def test_quick_suite(self):
        results = AcceptanceApi().run(self.directory, scale="quick", jobs=2)
        for result in results:
            with self.subTest(criterion=result.criterion):
                self.assertTrue(result.passed, result.detail)

    @SLOW
    def test_full_suite(self):
        results = AcceptanceApi().run(self.directory, jobs=4)
        for result in results:
            with self.subTest(criterion=result.criterion):
                self.assertEqual(result.status, PASS, result.detail)


class TestRefinementCriterion(unittest.TestCase):

    def setUp(self) -> None:
        self.section = AcceptanceApi().config["A1"]

    def evaluate(self, ratios):
        reports = [SimpleNamespace(exponent=3.0, ratio=ratio) for ratio in ratios]
        checks = Checks()
        with patch("pricetail.api.acceptance_api.run_leapfrog") as run_mock, \
             patch("pricetail.api.acceptance_api.tail_fit") as fit_mock, \
             patch("pricetail.api.acceptance_api.predicted_constant") as constant_mock:
            run_mock.return_value = {10.0: None, 20.0: None}
            fit_mock.side_effect = reports
            constant_mock.return_value = SimpleNamespace(value=-2.0)
            AcceptanceCriteria.a1(self.section, checks)
            self.assertEqual(run_mock.call_count, 2)
        return checks.result("A1")

    def test_improving(self):
        # coarse r=10, coarse r=20, fine r=10, fine r=20
        self.assertEqual(self.evaluate([1.04, 0.95, 1.02, 0.97]).status, PASS)

    def test_fine_run_worse_than_coarse(self):
        result = self.evaluate([1.04, 0.95, 1.06, 0.97])
        self.assertEqual(result.status, FAIL)
        self.assertIn("refinement r=10", result.detail)

    def test_equal_errors_do_not_count_as_improvement(self):
        self.assertEqual(self.evaluate([1.04, 0.95, 1.04, 0.96]).status, FAIL)
