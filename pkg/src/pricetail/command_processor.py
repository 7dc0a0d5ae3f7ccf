from pathlib import Path
from typing import List, Optional, Tuple

from pricetail.api.acceptance_api import AcceptanceApi, CriterionResult
from pricetail.api.experiment_api import ExperimentApi
from pricetail.decorators import log_function
from pricetail.managers.config_manager import ConfigManager
from pricetail.managers.sweep_manager import SweepManager
from pricetail.parsers.config_parser import ExperimentConfig, ExperimentKind
from pricetail.type_aliases import ErrorDictType, SummaryType


class CommandProcessor:
    """
    Class for redirecting the commands to the config manager, the experiment and acceptance apis and the sweep
    manager.

    Args:
        config_manager: reads and validates configs
        experiment_api: runs single experiments
        acceptance_api: runs the acceptance criteria
        sweep_manager: runs the instances of a sweep
    """
    def __init__(self, config_manager: ConfigManager, experiment_api: ExperimentApi, acceptance_api: AcceptanceApi,
                 sweep_manager: SweepManager) -> None:
        self.__config_manager = config_manager
        self.__experiment_api = experiment_api
        self.__acceptance_api = acceptance_api
        self.__sweep_manager = sweep_manager

    @log_function
    def run(self, config_file: Path, out_dir: Path, jobs: int = 1) -> Tuple[ExperimentConfig, SummaryType]:
        """
        Run the experiment of a config. A verify config runs its acceptance criteria.

        Args:
            config_file: the experiment config
            out_dir: the artifacts directory
            jobs: worker processes (used by verify configs)

        Returns:
            The experiment and its summary; for verify configs the summary maps criteria to their status
        """
        experiment = self.__config_manager.load(config_file)
        if experiment.kind == ExperimentKind.VERIFY:
            results = self.__acceptance_api.run(out_dir, experiment.verify.criteria, experiment.verify.scale, jobs)
            return experiment, {result.criterion: result.status for result in results}
        return experiment, self.__experiment_api.run(experiment, out_dir)

    @log_function
    def sweep(self, config_file: Path, out_dir: Path, jobs: int = 1) -> List[SummaryType]:
        """
        Run every instance of the swept parameter

        Args:
            config_file: config with a [sweep] section
            out_dir: the artifacts directory
            jobs: worker processes

        Returns:
            One summary row per instance
        """
        _, rows = self.__sweep_manager.run(config_file, out_dir, jobs)
        return rows

    @log_function
    def verify(self, config_file: Optional[Path], out_dir: Path, jobs: int = 1,
               baseline: Optional[Path] = None) -> List[CriterionResult]:
        """
        Run the acceptance suite

        Args:
            config_file: a verify config selecting criteria and scale, or None for all criteria at full scale
            out_dir: the artifacts directory
            jobs: worker processes
            baseline: directory with stored acceptance CSVs to compare with

        Returns:
            The result of every selected criterion
        """
        criteria: List[str] = []
        scale = "full"
        if config_file is not None:
            experiment = self.__config_manager.load(config_file)
            criteria, scale = experiment.verify.criteria, experiment.verify.scale
        return self.__acceptance_api.run(out_dir, criteria, scale, jobs, baseline)

    @log_function
    def validate(self, config_file: Path) -> ErrorDictType:
        """
        Check a config without running it

        Args:
            config_file: the experiment config

        Returns:
            Dictionary with errors, warnings and info
        """
        return self.__config_manager.validate(config_file)
