import copy
import logging
from pathlib import Path
from typing import List, Tuple

from pricetail.decorators import log_function
from pricetail.exceptions import ConfigurationError, ConfigFileNotFound, MalformedConfigFile
from pricetail.parsers.config_parser import ConfigParser, ExperimentConfig
from pricetail.settings import EXPERIMENT_SCHEMA
from pricetail.type_aliases import ErrorDictType, RawConfigType
from pricetail.utils import config_hash, get_empty_errordict, read_config_file
from pricetail.validators import validate_config_schema

logger = logging.getLogger(__name__)


class ConfigManager:
    def __init__(self, schema_path: Path = EXPERIMENT_SCHEMA) -> None:
        """ Reads experiment configs, checks them against the experiment schema and builds the typed config """
        self.__schema_path = schema_path

    @property
    def schema_path(self) -> Path:
        return self.__schema_path

    @log_function
    def load_raw(self, config_file: Path) -> RawConfigType:
        """
        Read the config file and check it against the schema

        Args:
            config_file: the sectioned key = value config

        Returns:
            The validated {section: {key: value}} mapping

        Raises:
            ConfigFileNotFound, MalformedConfigFile, ConfigurationError on a schema failure
        """
        raw_config = read_config_file(config_file)
        valid, message = validate_config_schema(raw_config, self.__schema_path, str(config_file))
        if not valid:
            raise ConfigurationError(message)
        return raw_config

    @staticmethod
    def build(raw_config: RawConfigType) -> ExperimentConfig:
        """ Coerce a validated mapping into the ExperimentConfig; the mapping's hash goes with it """
        return ConfigParser(raw_config, config_hash(raw_config)).parse()

    @log_function
    def load(self, config_file: Path) -> ExperimentConfig:
        """
        Read, validate and coerce an experiment config

        Args:
            config_file: the sectioned key = value config

        Returns:
            The typed ExperimentConfig, carrying the config hash
        """
        experiment = self.build(self.load_raw(config_file))
        logger.info("Loaded %s experiment '%s' (config hash %s)", experiment.kind.value, experiment.name,
                    experiment.config_hash[:12])
        return experiment

    @log_function
    def validate(self, config_file: Path) -> ErrorDictType:
        """
        Check the config file without running anything

        Args:
            config_file: the sectioned key = value config

        Returns:
            Dictionary with errors, warnings and info
        """
        error_dict = get_empty_errordict()
        try:
            raw_config = read_config_file(config_file)
        except (ConfigFileNotFound, MalformedConfigFile) as file_error:
            error_dict["error"].append(str(file_error))
            return error_dict
        valid, message = validate_config_schema(raw_config, self.__schema_path, str(config_file))
        if not valid:
            error_dict["error"].append(message)
            return error_dict
        try:
            experiment = self.build(raw_config)
        except ConfigurationError as config_error:
            error_dict["error"].append(str(config_error))
            return error_dict
        if experiment.sweep is not None and experiment.sweep.section not in raw_config:
            error_dict["warning"].append(f"Swept section [{experiment.sweep.section}] is not in the config, "
                                         f"the default of '{experiment.sweep.parameter}' is replaced")
        error_dict["info"].append(f"{experiment.kind.value} experiment '{experiment.name}', "
                                  f"config hash {experiment.config_hash}")
        return error_dict

    @log_function
    def sweep_instances(self, raw_config: RawConfigType) -> List[Tuple[str, RawConfigType]]:
        """
        Expand a config with a [sweep] section into one config per swept value

        Args:
            raw_config: validated mapping with a [sweep] section

        Returns:
            (label, mapping) per value, in the listed order; each mapping has the value substituted and no [sweep]

        Raises:
            ConfigurationError when there is nothing to sweep or an instance is not valid
        """
        sweep = self.build(raw_config).sweep
        if sweep is None:
            raise ConfigurationError("The config has no [sweep] section")
        if sweep.section == "sweep":
            raise ConfigurationError("The sweep parameter cannot be in the [sweep] section itself")
        instances = []
        for value in sweep.values:
            instance = copy.deepcopy(raw_config)
            del instance["sweep"]
            instance.setdefault(sweep.section, {})[sweep.key] = value
            valid, message = validate_config_schema(instance, self.__schema_path, f"{sweep.parameter}={value}")
            if not valid:
                raise ConfigurationError(message)
            instances.append((f"{sweep.parameter}={value}", instance))
        return instances
