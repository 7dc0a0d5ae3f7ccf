import os
from pathlib import Path
from urllib.parse import urlparse
from typing import Tuple, Any
from referencing import Registry, Resource
from jsonschema import Draft7Validator
from jsonschema.exceptions import ValidationError

from pricetail.exceptions import PackageNotComplete
from pricetail.settings import BASE_DIR
from pricetail.type_aliases import RawConfigType
from pricetail.utils import read_json_file


def validate_config_schema(raw_config: RawConfigType, schema_path: Path, file_name: str = "config") -> Tuple[bool, Any]:
    """Check a parsed config mapping against the json schema. Section schemas referenced from the top level
    schema are read from the package's schema directory.

    Args:
        raw_config: The parsed {section: {key: value}} mapping
        schema_path: The schema to check the mapping against
        file_name: Name used in the error message

    Returns:
        False and an error message in case the mapping is not valid for the schema
        Otherwise True and None (success)
    Raises:
        PackageNotComplete when the schema is not found
    """
    if not Path(schema_path).is_file():
        raise PackageNotComplete(str(schema_path))
    schema = read_json_file(schema_path)

    schema_base_path = Path(os.path.join(BASE_DIR, 'schema'))

    def retrieve_schema(uri: str): # type: ignore
        path = schema_base_path / urlparse(uri).path[1:]
        contents = read_json_file(path)
        return Resource.from_contents(contents)

    try:
        registry = Registry(retrieve=retrieve_schema) # type: ignore
        Draft7Validator(schema, registry=registry).validate(raw_config)
        return True, None
    except ValidationError as ve:
        location = "/".join(str(part) for part in ve.absolute_path)
        where = f" at '{location}'" if location else ""
        return False, f'In file {file_name}{where}: {ve.message}'
