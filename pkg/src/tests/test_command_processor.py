from pathlib import Path
from unittest.mock import MagicMock
import unittest

from pricetail.command_processor import CommandProcessor
from pricetail.parsers.config_parser import ExperimentConfig, ExperimentKind, VerifySettings
from pricetail.api.acceptance_api import PASS, SKIP, CriterionResult


class TestCommandProcessor(unittest.TestCase):

    def setUp(self):
        self.config_manager = MagicMock()
        self.experiment_api = MagicMock()
        self.acceptance_api = MagicMock()
        self.sweep_manager = MagicMock()
        self.processor = CommandProcessor(config_manager=self.config_manager, experiment_api=self.experiment_api,
                                          acceptance_api=self.acceptance_api, sweep_manager=self.sweep_manager)
        self.config_file = Path("experiment.ini")
        self.out_dir = Path("results")
        self.error_dict = {"error": [], "warning": [], "info": []}

    def test_run(self):
        experiment = ExperimentConfig(kind=ExperimentKind.MODEL)
        self.config_manager.load.return_value = experiment
        self.experiment_api.run.return_value = {"agreement": 1e-9}
        result = self.processor.run(config_file=self.config_file, out_dir=self.out_dir)
        self.config_manager.load.assert_called_once_with(self.config_file)
        self.experiment_api.run.assert_called_once_with(experiment, self.out_dir)
        self.acceptance_api.run.assert_not_called()
        self.assertEqual(result, (experiment, {"agreement": 1e-9}))

    def test_run_verify_config(self):
        experiment = ExperimentConfig(kind=ExperimentKind.VERIFY,
                                      verify=VerifySettings(criteria=["A9"], scale="quick"))
        self.config_manager.load.return_value = experiment
        self.acceptance_api.run.return_value = [CriterionResult("A9", PASS), CriterionResult("A1", SKIP)]
        _, summary = self.processor.run(config_file=self.config_file, out_dir=self.out_dir, jobs=2)
        self.acceptance_api.run.assert_called_once_with(self.out_dir, ["A9"], "quick", 2)
        self.experiment_api.run.assert_not_called()
        self.assertEqual(summary, {"A9": PASS, "A1": SKIP})

    def test_sweep(self):
        rows = [{"instance": "mode.l=0", "status": "ok"}]
        self.sweep_manager.run.return_value = (MagicMock(), rows)
        self.assertEqual(self.processor.sweep(config_file=self.config_file, out_dir=self.out_dir, jobs=4), rows)
        self.sweep_manager.run.assert_called_once_with(self.config_file, self.out_dir, 4)

    def test_verify(self):
        self.acceptance_api.run.return_value = []
        self.processor.verify(config_file=None, out_dir=self.out_dir)
        self.acceptance_api.run.assert_called_once_with(self.out_dir, [], "full", 1, None)
        self.config_manager.load.assert_not_called()

        self.acceptance_api.run.reset_mock()
        self.config_manager.load.return_value = ExperimentConfig(
            kind=ExperimentKind.VERIFY, verify=VerifySettings(criteria=["A8", "A12"], scale="quick"))
        self.processor.verify(config_file=self.config_file, out_dir=self.out_dir, jobs=3, baseline=Path("stored"))
        self.acceptance_api.run.assert_called_once_with(self.out_dir, ["A8", "A12"], "quick", 3, Path("stored"))

    def test_validate(self):
        self.config_manager.validate.return_value = self.error_dict
        self.assertEqual(self.processor.validate(config_file=self.config_file), self.error_dict)
        self.config_manager.validate.assert_called_once_with(self.config_file)
