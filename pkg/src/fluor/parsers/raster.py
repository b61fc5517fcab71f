"""
Float raster text format:

    # key=value
    <width> <height> <channels>
    v v v ...   (one line per pixel row, channels interleaved)
"""
import pathlib
from typing import Dict, Tuple

import numpy as np

from .exceptions import ParsingError


def parse_raster(path: pathlib.Path) -> Tuple[np.ndarray, Dict[str, str]]:
    """
    Returns: a (height, width, channels) array and the metadata block.

    Raises:
        ParsingError if the file is missing or malformed.
    """
    try:
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    except FileNotFoundError:
        raise ParsingError(f"Raster file {path} not existent")

    metadata = {}
    body = []
    for line in lines:
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            metadata[key.strip()] = value.strip()
        elif line.strip():
            body.append(line)

    if not body:
        raise ParsingError(f"Raster file {path} has no header")

    try:
        width, height, channels = (int(x) for x in body[0].split())
        values = np.array([[float(x) for x in line.split()]
                           for line in body[1:]])
    except ValueError:
        raise ParsingError(f"Malformed raster file {path}") from None

    if values.shape != (height, width * channels):
        raise ParsingError(
            f"Raster file {path} does not hold {height} rows of "
            f"{width}x{channels} values")

    return values.reshape(height, width, channels), metadata
