import pathlib
from typing import Dict

import toml
from toml.decoder import TomlDecodeError

from .exceptions import ParsingError


def parse_manifest(path: pathlib.Path) -> Dict[str, pathlib.Path]:
    """
    Parses a material manifest, a toml file with a [materials] table
    mapping names to Donaldson files. Relative paths are resolved against
    the manifest's directory.

    Raises:
        ParsingError if the file is missing or invalid.
    """
    path = pathlib.Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            data = toml.load(f)
    except FileNotFoundError:
        raise ParsingError(f"Manifest file {path} not existent")
    except TomlDecodeError as e:
        raise ParsingError(f"Unable to parse manifest {path}: {e}")

    materials = data.get("materials")
    if not isinstance(materials, dict):
        raise ParsingError(f"Manifest {path} has no [materials] table")

    entries = {}
    for name, location in materials.items():
        if not isinstance(location, str):
            raise ParsingError(
                f"Material {name} in {path} must map to a file path")
        location_path = pathlib.Path(location).expanduser()
        if not location_path.is_absolute():
            location_path = path.parent / location_path
        entries[name] = location_path

    return entries
