import shutil
import tempfile
import unittest
from pathlib import Path

import numpy as np

from pricetail.exceptions import ArtifactNotFound, ConfigHashMismatch, MalformedConfigFile
from pricetail.generators.table_generator import CsvTable, TableGenerator, compare_tables, read_csv_table
from pricetail.tails.fitting import TailReport
from pricetail.tails.ray_profile import RayRatio
from pricetail.tails.series import TimeSeries

TIMESTAMP = "2026-01-01T00:00:00Z"


class TestCsvTable(unittest.TestCase):

    def setUp(self) -> None:
        self.directory = Path(tempfile.mkdtemp())
        self.footer = {"grid": "x in [-50, 150], h=0.1", "scheme": "leapfrog", "config_hash": "abc"}

    def tearDown(self) -> None:
        shutil.rmtree(self.directory)

    def test_write_and_read(self):
        table = CsvTable(footer=self.footer)
        table.add_column("t*", [0.0, 0.1, 1.0 / 3.0])
        table.add_column("value", [1.0, -2.5e-12, 3.0])
        table.add_column("steps", [1, 2, 3])
        table.write(self.directory / "table.csv", timestamp=TIMESTAMP)

        content = (self.directory / "table.csv").read_text(encoding="utf-8")
        lines = content.split("\n")
        self.assertEqual(lines[0], "t*,value,steps")
        self.assertEqual(lines[3], "0.33333333333333331,3,3")
        self.assertEqual(lines[4:8], ["# config_hash: abc", "# scheme: leapfrog", "# grid: x in [-50, 150], h=0.1",
                                      f"# generated: {TIMESTAMP}"])
        self.assertNotIn("\r", content)

        read = read_csv_table(self.directory / "table.csv")
        self.assertEqual(read.header, ["t*", "value", "steps"])
        self.assertEqual(read.rows, 3)
        np.testing.assert_array_equal(read.column("t*"), [0.0, 0.1, 1.0 / 3.0])
        self.assertEqual(read.column("value")[1], -2.5e-12)
        self.assertEqual(read.footer["generated"], TIMESTAMP)
        self.assertEqual(read.footer["grid"], "x in [-50, 150], h=0.1")

    def test_complex_column(self):
        table = CsvTable()
        table.add_column("sigma", [0.1, 0.2])
        table.add_column("u", [1.0 + 2.0j, -0.5j])
        self.assertEqual(table.header, ["sigma", "re_u", "im_u"])
        self.assertEqual(table.columns["im_u"], [2.0, -0.5])

    def test_column_length(self):
        table = CsvTable()
        table.add_column("x", [1.0, 2.0])
        self.assertRaises(ValueError, table.add_column, "y", [1.0])

    def test_add_row(self):
        table = CsvTable()
        table.add_row({"instance": "mode.l=0", "exponent": 3.0, "ok": True})
        table.add_row({"instance": "mode.l=1", "extra": 1.0})
        self.assertEqual(table.header, ["instance", "exponent", "ok"])
        self.assertEqual(table.lines(), [["mode.l=0", "3", "true"], ["mode.l=1", "", ""]])

    def test_read_errors(self):
        self.assertRaises(ArtifactNotFound, read_csv_table, self.directory / "missing.csv")
        (self.directory / "empty.csv").write_text("# config_hash: abc\n", encoding="utf-8")
        self.assertRaises(MalformedConfigFile, read_csv_table, self.directory / "empty.csv")
        (self.directory / "ragged.csv").write_text("x,value\n1,2,3\n", encoding="utf-8")
        self.assertRaises(MalformedConfigFile, read_csv_table, self.directory / "ragged.csv")

    def test_compare_tables(self):
        produced = CsvTable(footer=dict(self.footer, generated="now"))
        produced.add_column("x", [1.0, 2.0])
        baseline = CsvTable(footer=dict(self.footer, generated="yesterday"))
        baseline.add_column("x", [1.0, 2.0])
        self.assertEqual(compare_tables(produced, baseline, "a.csv"), [])

        changed = CsvTable(footer=dict(self.footer))
        changed.add_column("x", [1.0, 2.5])
        self.assertEqual(compare_tables(changed, baseline, "a.csv"), ["a.csv: 1 rows differ"])

        renamed = CsvTable(footer=dict(self.footer, grid="other"))
        renamed.add_column("y", [1.0, 2.0])
        differences = compare_tables(renamed, baseline, "a.csv")
        self.assertEqual(len(differences), 2)
        self.assertIn("header", differences[0])
        self.assertIn("footer 'grid'", differences[1])

        other = CsvTable(footer=dict(self.footer, config_hash="def"))
        other.add_column("x", [1.0, 2.0])
        self.assertRaises(ConfigHashMismatch, compare_tables, other, baseline, "a.csv")


class TestTableGenerator(unittest.TestCase):

    def setUp(self) -> None:
        self.footer = {"config_hash": "abc", "scheme": "leapfrog", "grid": "test"}
        self.series = TimeSeries("t*", np.array([1.0, 2.0, 3.0]), np.array([1.0, 0.125, 1.0 / 27.0]), "r=10")

    def test_series(self):
        table = TableGenerator.series(self.series, self.footer)
        self.assertEqual(table.header, ["t*", "value"])
        lpi = TimeSeries("x", np.array([1.5, 2.5]), np.array([3.0, 3.0]))
        table = TableGenerator.series(self.series, self.footer, lpi)
        self.assertEqual(table.header, ["t*", "value", "lpi"])
        self.assertTrue(np.isnan(table.columns["lpi"][0]))
        self.assertEqual(table.columns["lpi"][1], 3.0)

    def test_tail_reports(self):
        report = TailReport(lpi=self.series, exponent=3.01, exponent_error=0.01, coefficient=None,
                            coefficient_error=None, window=(800.0, 1800.0), residual=1e-4, target_exponent=3.0)
        table = TableGenerator.tail_reports({"r=10": report}, self.footer)
        self.assertEqual(table.columns["observer"], ["r=10"])
        self.assertEqual(table.columns["coefficient"], [""])
        self.assertEqual(table.columns["exponent_mismatch"], [False])
        self.assertEqual(table.lines()[0][-1], "false")

    def test_ray_ratios(self):
        table = TableGenerator.ray_ratios([RayRatio(0.5, 1.01, 0.002, (100.0, 500.0))], self.footer)
        self.assertEqual(table.header, ["v", "ratio", "error", "window_start", "window_end"])

    def test_named_values(self):
        table = TableGenerator.named_values({"c0": 2.0, "b": 1.0 - 1.0j}, self.footer)
        self.assertEqual(table.header, ["name", "re_value", "im_value"])
        self.assertEqual(table.columns["re_value"], [2.0, 1.0])
        self.assertEqual(table.columns["im_value"], [0.0, -1.0])
        table = TableGenerator.named_values({"c0": 2.0}, self.footer)
        self.assertEqual(table.header, ["name", "value"])
