import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Tuple

from pricetail.api.experiment_api import ExperimentApi
from pricetail.decorators import log_function
from pricetail.exceptions import AcceptanceFailed, PriceTailException
from pricetail.generators.table_generator import CsvTable
from pricetail.managers.config_manager import ConfigManager
from pricetail.type_aliases import RawConfigType, SummaryType
from pricetail.utils import config_hash, file_safe_name

logger = logging.getLogger(__name__)


def run_instance(raw_config: RawConfigType, label: str, out_dir: Path) -> Dict[str, Any]:
    """
    Run one sweep instance in a worker process. Failures are returned, not raised.

    Args:
        raw_config: the validated mapping of the instance
        label: 'section.key=value'
        out_dir: where the artifacts of this instance go

    Returns:
        The summary row of the instance, with status 'ok' or 'failed' and the error message
    """
    row: Dict[str, Any] = {"instance": label}
    try:
        experiment = ConfigManager.build(raw_config)
        summary = ExperimentApi().run(experiment, out_dir / file_safe_name(label))
        row["status"] = "ok"
        row.update(summary)
    except PriceTailException as exception:
        row["status"] = "failed"
        row["error"] = f"{type(exception).__name__}: {exception}"
    except Exception as exception:  # pylint: disable=broad-except
        row["status"] = "failed"
        row["error"] = f"Unhandled {type(exception).__name__}: {exception}"
    return row


class SweepManager:
    """
    Runs the instances of a sweep, each independently, on a process pool and collates one row per instance.
    A failing instance is recorded and the other instances go on.
    """
    def __init__(self, config_manager: ConfigManager) -> None:
        self.__config_manager = config_manager

    @log_function
    def run(self, config_file: Path, out_dir: Path, jobs: int = 1) -> Tuple[CsvTable, List[SummaryType]]:
        """
        Run the sweep described by a config

        Args:
            config_file: config with a [sweep] section
            out_dir: the sweep writes sweep.csv here and each instance in its own subdirectory
            jobs: the number of worker processes

        Returns:
            The collated table and the rows

        Raises:
            AcceptanceFailed when one or more instances failed (after all of them ran and sweep.csv is written)
        """
        raw_config = self.__config_manager.load_raw(config_file)
        experiment = self.__config_manager.build(raw_config)
        instances = self.__config_manager.sweep_instances(raw_config)
        directory = out_dir / (experiment.output or experiment.name)
        directory.mkdir(parents=True, exist_ok=True)
        logger.info("Sweep over %d instances with %d worker(s)", len(instances), jobs)

        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                futures = [executor.submit(run_instance, instance, label, directory) for label, instance in instances]
                rows = [future.result() for future in futures]
        else:
            rows = [run_instance(instance, label, directory) for label, instance in instances]

        table = self.collate(rows, {"config_hash": config_hash(raw_config), "scheme": experiment.scheme.value,
                                    "grid": f"sweep {experiment.sweep.parameter if experiment.sweep else ''}"})
        table.write(directory / "sweep.csv")
        failed = [row["instance"] for row in rows if row["status"] != "ok"]
        for row in rows:
            if row["status"] != "ok":
                logger.warning("Sweep instance %s failed: %s", row["instance"], row["error"])
        if failed:
            raise AcceptanceFailed(", ".join(failed))
        return table, rows

    @staticmethod
    def collate(rows: List[SummaryType], footer: Dict[str, str]) -> CsvTable:
        """ One row per instance; the columns are the union of the summary keys in first-seen order """
        names: List[str] = []
        for row in rows:
            names += [name for name in row if name not in names]
        table = CsvTable(columns={name: [] for name in names}, footer=footer)
        for row in rows:
            table.add_row({name: row.get(name, "") for name in names})
        return table
