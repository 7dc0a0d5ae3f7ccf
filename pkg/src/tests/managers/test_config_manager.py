import os
import shutil
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from pricetail.exceptions import ConfigFileNotFound, ConfigurationError, MalformedConfigFile, PackageNotComplete
from pricetail.managers.config_manager import ConfigManager
from pricetail.parsers.config_parser import ExperimentKind

EVOLVE_CONFIG = """
[experiment]
kind = evolve
name = schwarzschild_l0

[mode]
l = 0   ; monopole

[cauchy_grid]
x_min = -50
x_max = 150
step = 0.1
t_end = 40

[data]
phi1_kind = gaussian
phi1_center = 26
phi1_width = 1.5

[observers]
radii = 10, 20
"""


class TestConfigManager(unittest.TestCase):

    def setUp(self) -> None:
        self.directory = Path(tempfile.mkdtemp())
        self.config_manager = ConfigManager()

    def tearDown(self) -> None:
        shutil.rmtree(self.directory)

    def write(self, text: str, name: str = "experiment.ini") -> Path:
        path = self.directory / name
        path.write_text(text, encoding="utf-8")
        return path

    def test_load(self):
        experiment = self.config_manager.load(self.write(EVOLVE_CONFIG))
        self.assertEqual(experiment.kind, ExperimentKind.EVOLVE)
        self.assertEqual(experiment.mode.l, 0)
        self.assertEqual(len(experiment.config_hash), 64)

    def test_hash_ignores_layout(self):
        first = self.config_manager.load(self.write(EVOLVE_CONFIG, "first.ini"))
        compact = EVOLVE_CONFIG.replace(" = ", "=").replace("; monopole", "# monopole") + "\n\n"
        second = self.config_manager.load(self.write(compact, "second.ini"))
        self.assertEqual(first.config_hash, second.config_hash)
        changed = self.config_manager.load(self.write(EVOLVE_CONFIG.replace("t_end = 40", "t_end = 41"), "third.ini"))
        self.assertNotEqual(first.config_hash, changed.config_hash)

    def test_load_raw_errors(self):
        self.assertRaises(ConfigFileNotFound, self.config_manager.load_raw, self.directory / "missing.ini")
        self.assertRaises(MalformedConfigFile, self.config_manager.load_raw, self.write("kind = evolve\n"))
        unknown_key = self.write(EVOLVE_CONFIG.replace("t_end = 40", "t_stop = 40"))
        with self.assertRaises(ConfigurationError) as context:
            self.config_manager.load_raw(unknown_key)
        self.assertIn("cauchy_grid", str(context.exception))

    def test_schema_missing(self):
        config_manager = ConfigManager(schema_path=self.directory / "missing.json")
        self.assertEqual(config_manager.schema_path, self.directory / "missing.json")
        self.assertRaises(PackageNotComplete, config_manager.load_raw, self.write(EVOLVE_CONFIG))

    def test_validate_valid(self):
        validate_dict = self.config_manager.validate(self.write(EVOLVE_CONFIG))
        self.assertEqual(validate_dict["error"], [])
        self.assertEqual(validate_dict["warning"], [])
        self.assertEqual(len(validate_dict["info"]), 1)
        self.assertIn("evolve experiment 'schwarzschild_l0', config hash", validate_dict["info"][0])

    def test_validate_errors(self):
        validate_dict = self.config_manager.validate(self.directory / "missing.ini")
        self.assertIn("was not found", validate_dict["error"][0])

        validate_dict = self.config_manager.validate(self.write(EVOLVE_CONFIG.replace("x_min = -50",
                                                                                      "x_min = minus fifty")))
        self.assertEqual(len(validate_dict["error"]), 1)
        self.assertIn("x_min", validate_dict["error"][0])
        self.assertEqual(validate_dict["info"], [])

        validate_dict = self.config_manager.validate(self.write(EVOLVE_CONFIG.replace("radii = 10, 20\n", "")))
        self.assertEqual(len(validate_dict["error"]), 1)
        self.assertIn("observer", validate_dict["error"][0])

    def test_validate_sweep_warning(self):
        text = EVOLVE_CONFIG + "\n[sweep]\nparameter = background.mass\nvalues = 1, 2\n"
        validate_dict = self.config_manager.validate(self.write(text))
        self.assertEqual(validate_dict["error"], [])
        self.assertEqual(len(validate_dict["warning"]), 1)
        self.assertIn("[background]", validate_dict["warning"][0])

    def test_sweep_instances(self):
        text = EVOLVE_CONFIG + "\n[sweep]\nparameter = mode.l\nvalues = 0, 1\n"
        raw_config = self.config_manager.load_raw(self.write(text))
        instances = self.config_manager.sweep_instances(raw_config)
        self.assertEqual([label for label, _ in instances], ["mode.l=0", "mode.l=1"])
        for (_, instance), value in zip(instances, ("0", "1")):
            self.assertNotIn("sweep", instance)
            self.assertEqual(instance["mode"]["l"], value)
        self.assertIn("sweep", raw_config)
        self.assertEqual(raw_config["mode"]["l"], "0")

    def test_sweep_instances_errors(self):
        raw_config = self.config_manager.load_raw(self.write(EVOLVE_CONFIG))
        self.assertRaises(ConfigurationError, self.config_manager.sweep_instances, raw_config)

        text = EVOLVE_CONFIG + "\n[sweep]\nparameter = mode.l\nvalues = 0, one\n"
        raw_config = self.config_manager.load_raw(self.write(text))
        with self.assertRaises(ConfigurationError) as context:
            self.config_manager.sweep_instances(raw_config)
        self.assertIn("mode.l=one", str(context.exception))

    def test_load_logs_hash(self):
        with patch("pricetail.managers.config_manager.logger") as logger_mock:
            experiment = self.config_manager.load(self.write(EVOLVE_CONFIG))
        logger_mock.info.assert_called_once_with("Loaded %s experiment '%s' (config hash %s)", "evolve",
                                                 "schwarzschild_l0", experiment.config_hash[:12])

    def test_shipped_examples_are_valid(self):
        examples = Path(__file__).parents[3] / "docs" / "ini_examples"
        for config_file in sorted(os.listdir(examples)):
            if not config_file.endswith(".ini"):
                continue
            with self.subTest(config_file=config_file):
                validate_dict = self.config_manager.validate(examples / config_file)
                self.assertEqual(validate_dict["error"], [])
