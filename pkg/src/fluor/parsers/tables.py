"""
Reader for comma-separated tables whose first column is a wavelength in
nanometres: spectra (``wavelength_nm,value``), colour matching functions
(``wavelength,x,y,z``) and similar.
"""
import csv
import pathlib
from io import TextIOWrapper
from typing import List, Tuple, Union

import numpy as np

from ..spectral.grid import WavelengthGrid
from ..spectral.spectrum import Spectrum, tabulated_spectrum
from .exceptions import ParsingError


def read_columns(fileobj_or_path: Union[TextIOWrapper, pathlib.Path, str],
                 columns: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Reads a wavelength table with the given number of value columns.

    A first row that does not parse as numbers is taken as a header. Blank
    lines and lines starting with '#' are ignored.

    Returns: the wavelengths and an (N, columns) array of values.

    Raises:
        ParsingError if the file is missing, malformed, or its wavelengths
        are not strictly increasing.
    """
    if isinstance(fileobj_or_path, (str, pathlib.Path)):
        try:
            with open(fileobj_or_path, encoding="utf-8", newline="") as f:
                rows = _read_rows(f)
        except FileNotFoundError:
            raise ParsingError(f"Table file {fileobj_or_path} not existent")
    else:
        rows = _read_rows(fileobj_or_path)

    wavelengths = []
    values = []
    for lineno, row in rows:
        if len(row) != columns + 1:
            raise ParsingError(
                f"Line {lineno}: expected {columns + 1} columns, "
                f"got {len(row)}")
        try:
            numbers = [float(x) for x in row]
        except ValueError:
            if lineno == rows[0][0] and not wavelengths:
                continue
            raise ParsingError(f"Line {lineno}: non numeric entry in {row}")
        wavelengths.append(numbers[0])
        values.append(numbers[1:])

    if len(wavelengths) < 2:
        raise ParsingError("A table needs at least two rows")

    wavelengths_array = np.array(wavelengths)
    if np.any(np.diff(wavelengths_array) <= 0):
        raise ParsingError("Wavelengths must be strictly increasing")

    return wavelengths_array, np.array(values)


def read_spectrum(fileobj_or_path: Union[TextIOWrapper, pathlib.Path, str],
                  grid: WavelengthGrid) -> Spectrum:
    """Reads a two column spectrum file and resamples it onto the grid"""
    wavelengths, values = read_columns(fileobj_or_path, 1)
    return tabulated_spectrum(wavelengths, values[:, 0], grid)


def _read_rows(f) -> List[Tuple[int, List[str]]]:
    rows = []
    for lineno, row in enumerate(csv.reader(f), start=1):
        cells = [cell.strip() for cell in row]
        if not cells or not any(cells) or cells[0].startswith("#"):
            continue
        rows.append((lineno, cells))

    if not rows:
        raise ParsingError("Empty table")
    return rows
