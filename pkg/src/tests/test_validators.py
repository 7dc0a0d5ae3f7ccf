from pathlib import Path
from unittest.mock import patch
import unittest

from pricetail.exceptions import PackageNotComplete
from pricetail.settings import EXPERIMENT_SCHEMA
from pricetail.validators import validate_config_schema


class TestValidators(unittest.TestCase):

    def setUp(self) -> None:
        self.path = Path("dummy")
        self.raw_config = {
            "experiment": {"kind": "evolve", "name": "schwarzschild_l0"},
            "mode": {"l": "1"},
            "observers": {"radii": "10, 20.5, 1e3"},
        }

    def test_valid_config(self):
        self.assertEqual(validate_config_schema(self.raw_config, EXPERIMENT_SCHEMA), (True, None))

    def test_section_references_are_resolved(self):
        self.raw_config["observers"]["radii"] = "10, twenty"
        valid, message = validate_config_schema(self.raw_config, EXPERIMENT_SCHEMA, "experiment.ini")
        self.assertFalse(valid)
        self.assertTrue(message.startswith("In file experiment.ini at 'observers/radii': "))

    def test_required_and_unknown(self):
        valid, message = validate_config_schema({"mode": {"l": "0"}}, EXPERIMENT_SCHEMA)
        self.assertFalse(valid)
        self.assertIn("'experiment' is a required property", message)
        self.assertTrue(message.startswith("In file config: "))

        self.raw_config["network"] = {}
        valid, message = validate_config_schema(self.raw_config, EXPERIMENT_SCHEMA)
        self.assertFalse(valid)
        self.assertIn("network", message)

    def test_value_forms(self):
        for section, key, value in (("experiment", "name", "with space"), ("experiment", "kind", "evolution"),
                                    ("mode", "l", "-1"), ("tail", "static", "maybe"),
                                    ("sweep", "parameter", "mode")):
            with self.subTest(key=key, value=value):
                raw_config = {"experiment": {"kind": "evolve"}, section: {key: value}}
                if section == "experiment":
                    raw_config["experiment"] = {"kind": "evolve", key: value}
                valid, _ = validate_config_schema(raw_config, EXPERIMENT_SCHEMA)
                self.assertFalse(valid)

    def test_schema_not_found(self):
        with patch("pricetail.validators.Path.is_file") as is_file_mock:
            is_file_mock.return_value = False
            self.assertRaises(PackageNotComplete, validate_config_schema, self.raw_config, self.path)
