import json
from pathlib import Path
from unittest.mock import patch, mock_open
import unittest

from pricetail.exceptions import ConfigFileNotFound, MalformedConfigFile, PackageNotComplete
from pricetail.utils import config_hash, canonical_json, file_safe_name, format_float, get_empty_errordict, \
    parse_float_list, parse_list, read_config_file, read_json_file, reorder_data


class TestUtils(unittest.TestCase):

    def setUp(self) -> None:
        self.path = Path("dummy")
        self.config_text = "[experiment]\nkind = evolve   ; inline\nname=x\n\n[Observers]\nRadii = 10, 20 # two\n"

    def test_read_config_file(self):
        with patch("pricetail.utils.open", mock_open(read_data=self.config_text)) as open_mock:
            raw_config = read_config_file(self.path)
            open_mock.assert_called_once_with(self.path, encoding="utf-8")
        self.assertEqual(raw_config, {"experiment": {"kind": "evolve", "name": "x"},
                                      "Observers": {"Radii": "10, 20"}})

    def test_read_config_file_errors(self):
        with patch("pricetail.utils.open") as open_mock:
            open_mock.side_effect = FileNotFoundError
            self.assertRaises(ConfigFileNotFound, read_config_file, self.path)

        with patch("pricetail.utils.open", mock_open(read_data="kind = evolve\n")):
            self.assertRaises(MalformedConfigFile, read_config_file, self.path)

        with patch("pricetail.utils.open", mock_open(read_data="[a]\nx = 1\n[a]\ny = 2\n")):
            self.assertRaises(MalformedConfigFile, read_config_file, self.path)

    def test_read_json_file(self):
        with patch("pricetail.utils.open", mock_open(read_data='{"type": "object"}')):
            self.assertEqual(read_json_file(self.path), {"type": "object"})

        with patch("pricetail.utils.open") as open_mock:
            open_mock.side_effect = FileNotFoundError
            self.assertRaises(PackageNotComplete, read_json_file, self.path)

        with patch("pricetail.utils.open", mock_open(read_data="{")):
            self.assertRaises(PackageNotComplete, read_json_file, self.path)

    def test_config_hash(self):
        first = {"mode": {"l": "0"}, "experiment": {"name": "x", "kind": "evolve"}}
        second = {"experiment": {"kind": "evolve", "name": "x"}, "mode": {"l": "0"}}
        self.assertEqual(canonical_json(first), canonical_json(second))
        self.assertEqual(canonical_json(first), json.dumps(json.loads(canonical_json(second)), sort_keys=True,
                                                           separators=(",", ":")))
        self.assertEqual(config_hash(first), config_hash(second))
        self.assertEqual(len(config_hash(first)), 64)
        self.assertNotEqual(config_hash(first), config_hash({"experiment": {"kind": "evolve"}}))
        self.assertEqual(config_hash({}), "44136fa355b3678a1146ad16f7e8649e94fb4fc21fe77e8310c060f61caaff8a")

    def test_parse_list(self):
        self.assertEqual(parse_list(" a, b ,,c "), ["a", "b", "c"])
        self.assertEqual(parse_list(""), [])
        self.assertEqual(parse_float_list("1, 2.5e-3"), [1.0, 2.5e-3])
        self.assertRaises(ValueError, parse_float_list, "1, x")

    def test_reorder_data(self):
        original_data = [{"status": "PASS", "criterion": "A1"}, {"criterion": "A2"}]
        reordered = reorder_data(original_data, ["criterion", "status"])
        self.assertEqual([list(row) for row in reordered], [["criterion", "status"], ["criterion", "status"]])
        self.assertEqual(reordered[1]["status"], "-")

    def test_get_empty_errordict(self):
        self.assertEqual(get_empty_errordict(), {"error": [], "warning": [], "info": []})

    def test_format_float(self):
        self.assertEqual(format_float(0.1), "0.10000000000000001")
        self.assertEqual(format_float(2.0), "2")
        self.assertEqual(float(format_float(1.0 / 3.0)), 1.0 / 3.0)

    def test_file_safe_name(self):
        self.assertEqual(file_safe_name("r=10"), "r=10")
        self.assertEqual(file_safe_name("scri(v=6008)"), "scri_v=6008")
        self.assertEqual(file_safe_name("ray(t*/r=0.5)"), "ray_t_r=0.5")
        self.assertEqual(file_safe_name("mode.l=2"), "mode.l=2")
