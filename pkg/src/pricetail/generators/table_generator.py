"""
CSV artifacts: one header row, typed columns, provenance footer.

Floats are written at 17 significant digits, complex columns as re_/im_ pairs, lines end in LF. The footer
lines start with '#'; '# generated' carries the only non-deterministic content and is left out of
comparisons.
"""
import csv
import datetime
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from pricetail.exceptions import ArtifactNotFound, ConfigHashMismatch, MalformedConfigFile
from pricetail.tails.fitting import TailReport
from pricetail.tails.ray_profile import RayRatio
from pricetail.tails.series import TimeSeries
from pricetail.type_aliases import CellType, FooterType
from pricetail.utils import format_float

GENERATED = "generated"
FOOTER_ORDER = ("config_hash", "scheme", "grid")


def _cell(value: CellType) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    return str(value)


@dataclass
class CsvTable:
    """ Named columns of equal length and the footer entries """
    columns: Dict[str, List[CellType]] = field(default_factory=dict)
    footer: FooterType = field(default_factory=dict)

    def add_column(self, name: str, values: Sequence[CellType]) -> None:
        """ Add a column; complex values are split into re_<name> and im_<name> """
        values = list(values)
        if self.columns and len(values) != self.rows:
            raise ValueError(f"Column '{name}' has {len(values)} rows, the table has {self.rows}")
        if any(isinstance(value, (complex, np.complexfloating)) for value in values):
            self.columns[f"re_{name}"] = [float(np.real(value)) for value in values]
            self.columns[f"im_{name}"] = [float(np.imag(value)) for value in values]
        else:
            self.columns[name] = values

    def add_row(self, row: Dict[str, CellType]) -> None:
        """ Append a row; the first row fixes the column set """
        if not self.columns:
            for name in row:
                self.columns[name] = []
        for name in self.columns:
            self.columns[name].append(row.get(name, ""))

    @property
    def header(self) -> List[str]:
        return list(self.columns)

    @property
    def rows(self) -> int:
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def column(self, name: str) -> np.ndarray:
        return np.asarray([float(value) for value in self.columns[name]])

    def lines(self) -> List[List[str]]:
        return [[_cell(self.columns[name][index]) for name in self.columns] for index in range(self.rows)]

    def write(self, file_name: Path, timestamp: Optional[str] = None) -> None:
        """
        Write the table

        Args:
            file_name: Path of the CSV file
            timestamp: the generated footer entry (default: now, UTC)
        """
        footer = dict(self.footer)
        footer[GENERATED] = timestamp or datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        with open(file_name, mode="w", encoding="utf-8", newline="") as fp:
            writer = csv.writer(fp, lineterminator="\n")
            writer.writerow(self.header)
            writer.writerows(self.lines())
            keys = [key for key in FOOTER_ORDER if key in footer] + \
                [key for key in footer if key not in FOOTER_ORDER and key != GENERATED] + [GENERATED]
            for key in keys:
                fp.write(f"# {key}: {footer[key]}\n")


def read_csv_table(file_name: Path) -> CsvTable:
    """
    Read a table written by CsvTable.write. Cells stay strings; use CsvTable.column for numbers.

    Raises:
        ArtifactNotFound: If the file doesn't exist
        MalformedConfigFile: If rows do not match the header
    """
    try:
        with open(file_name, encoding="utf-8", newline="") as fp:
            content = fp.read().splitlines()
    except FileNotFoundError:
        raise ArtifactNotFound(str(file_name)) from None
    body = [line for line in content if line and not line.startswith("#")]
    footer: FooterType = {}
    for line in content:
        if line.startswith("# ") and ": " in line:
            key, value = line[2:].split(": ", 1)
            footer[key] = value
    rows = list(csv.reader(body))
    if not rows:
        raise MalformedConfigFile(str(file_name), "no header row")
    header = rows[0]
    table = CsvTable(columns={name: [] for name in header}, footer=footer)
    for row in rows[1:]:
        if len(row) != len(header):
            raise MalformedConfigFile(str(file_name), f"row with {len(row)} cells for {len(header)} columns")
        for name, value in zip(header, row):
            table.columns[name].append(value)
    return table


def compare_tables(produced: CsvTable, baseline: CsvTable, file_name: str) -> List[str]:
    """
    Differences between a produced table and its stored baseline, ignoring the generated timestamp.

    Raises:
        ConfigHashMismatch when the tables come from different configurations
    """
    expected = baseline.footer.get("config_hash", "")
    found = produced.footer.get("config_hash", "")
    if expected != found:
        raise ConfigHashMismatch(file_name, expected, found)
    differences = []
    if produced.header != baseline.header:
        differences.append(f"{file_name}: header {produced.header} differs from {baseline.header}")
    elif produced.lines() != baseline.lines():
        changed = sum(1 for new, old in zip(produced.lines(), baseline.lines()) if new != old)
        changed += abs(produced.rows - baseline.rows)
        differences.append(f"{file_name}: {changed} rows differ")
    for key in FOOTER_ORDER:
        if produced.footer.get(key) != baseline.footer.get(key):
            differences.append(f"{file_name}: footer '{key}' differs")
    return differences


class TableGenerator:
    """ Builds the CSV tables of the experiment results """
    @staticmethod
    def series(series: TimeSeries, footer: FooterType, lpi: Optional[TimeSeries] = None) -> CsvTable:
        table = CsvTable(footer=dict(footer))
        table.add_column(series.parameter, list(series.x))
        table.add_column("value", list(series.values))
        if lpi is not None:
            table.add_column("lpi", list(np.interp(series.x, lpi.x, lpi.values, left=np.nan, right=np.nan)))
        return table

    @staticmethod
    def tail_reports(reports: Dict[str, TailReport], footer: FooterType) -> CsvTable:
        table = CsvTable(footer=dict(footer))
        for observer, report in reports.items():
            table.add_row({
                "observer": observer,
                "exponent": report.exponent,
                "exponent_error": report.exponent_error,
                "target_exponent": "" if report.target_exponent is None else report.target_exponent,
                "coefficient": "" if report.coefficient is None else report.coefficient,
                "coefficient_error": "" if report.coefficient_error is None else report.coefficient_error,
                "predicted": "" if report.predicted_coefficient is None else report.predicted_coefficient,
                "ratio": "" if report.ratio is None else report.ratio,
                "window_start": report.window[0],
                "window_end": report.window[1],
                "exponent_mismatch": report.exponent_mismatch,
            })
        return table

    @staticmethod
    def ray_ratios(ratios: Sequence[RayRatio], footer: FooterType) -> CsvTable:
        table = CsvTable(footer=dict(footer))
        for ratio in ratios:
            table.add_row({"v": ratio.ratio, "ratio": ratio.estimate, "error": ratio.error,
                           "window_start": ratio.window[0], "window_end": ratio.window[1]})
        return table

    @staticmethod
    def named_values(values: Dict[str, CellType], footer: FooterType) -> CsvTable:
        """ A two column table name, value (complex values get re_/im_ columns) """
        table = CsvTable(footer=dict(footer))
        names = list(values)
        table.add_column("name", names)
        entries = [values[name] for name in names]
        if any(isinstance(value, complex) for value in entries):
            table.add_column("value", [complex(value) for value in entries])  # type: ignore
        else:
            table.add_column("value", entries)
        return table
