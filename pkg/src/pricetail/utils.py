import configparser
import hashlib
import json
import re
from pathlib import Path
from typing import Any, Dict, List

from pricetail.exceptions import ConfigFileNotFound, MalformedConfigFile, PackageNotComplete
from pricetail.type_aliases import ErrorDictType, RawConfigType


def read_config_file(file_name: Path, encoding: str = 'utf-8') -> RawConfigType:
    """
    Open the file in 'encoding' format & read the sectioned key = value text

    Args:
        file_name: Path specifying the config file to be read
        encoding: Encoding format in which to open the file

    Returns:
        A dictionary {section: {key: value}} with all values as stripped strings

    Raises:
        ConfigFileNotFound: If the file doesn't exist
        MalformedConfigFile: If the file is not valid sectioned text
    """
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(';', '#'))
    parser.optionxform = str  # type: ignore
    try:
        with open(file_name, encoding=encoding) as fp:
            parser.read_file(fp)
    except FileNotFoundError:
        raise ConfigFileNotFound(str(file_name)) from None
    except configparser.Error as config_error:
        raise MalformedConfigFile(str(file_name), config_error.message) from None
    return {section: {key: value.strip() for key, value in parser.items(section)} for section in parser.sections()}


def read_json_file(file_name: Path, encoding: str = 'utf-8') -> Any:
    """ Read a json file that ships with the package; a missing or broken file is a packaging error """
    try:
        with open(file_name, encoding=encoding) as fp:
            return json.load(fp)
    except (FileNotFoundError, json.decoder.JSONDecodeError):
        raise PackageNotComplete(str(file_name)) from None


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(',', ':'))


def config_hash(data: RawConfigType) -> str:
    """ SHA-256 of the canonical json dump of a validated config mapping """
    return hashlib.sha256(canonical_json(data).encode('utf-8')).hexdigest()


def parse_list(value: str) -> List[str]:
    """ Split a comma separated config value, dropping empty items """
    return [item.strip() for item in value.split(',') if item.strip()]


def parse_float_list(value: str) -> List[float]:
    return [float(item) for item in parse_list(value)]


def reorder_data(original_data: List[Dict[str, Any]], desired_order: List[str]) -> List[Dict[str, Any]]:
    """
    Reorder keys in each dictionary of the original_data so that they are in the order
    specified in the desired_order parameter

    Args:
        original_data: A list containing dictionaries whose keys need to be reordered
        desired_order: A list with key names, specified in the desired order

    Returns:
        A List of dictionaries where each dictionary contains keys in the desired order
    """
    reordered_data = []
    for item in original_data:
        reordered_item = {key: item.get(key, '-') for key in desired_order}
        reordered_data.append(reordered_item)
    return reordered_data


def get_empty_errordict() -> ErrorDictType:
    """Return empty error dictionary"""
    return {"error": [], "warning": [], "info": []}


def format_float(value: float) -> str:
    """ Decimal representation at 17 significant digits """
    return format(value, ".17g")


def file_safe_name(name: str) -> str:
    """ A file system friendly version of an observer name or sweep label, e.g. 'r=10' or 'mode.l=2' """
    return re.sub(r"[^A-Za-z0-9_.=-]+", "_", name).strip("_")
