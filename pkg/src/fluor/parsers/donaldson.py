"""
Donaldson matrix text format.

Comma-separated. The first row lists the incoming wavelengths (its first
cell is a free label, usually empty), every following row starts with an
outgoing wavelength followed by the matrix entries for that row. Entries
are stored exactly as DonaldsonMatrix holds them: reflectance on the
λ_i = λ_o cells, reradiation density times the λ_i quadrature weight
elsewhere.
"""
from __future__ import annotations

import csv
import dataclasses
import pathlib
from io import TextIOWrapper
from typing import List, Union

import atomicwrites
import numpy as np

from ..spectral.donaldson import DonaldsonMatrix
from ..spectral.exceptions import SpectralError
from ..spectral.grid import WavelengthGrid
from .exceptions import ParsingError


@dataclasses.dataclass
class DonaldsonTable:
    """The raw content of a Donaldson file"""
    lambda_in: np.ndarray
    lambda_out: np.ndarray
    entries: np.ndarray

    @classmethod
    def parse(cls,
              fileobj_or_path: Union[TextIOWrapper, pathlib.Path, str]
              ) -> DonaldsonTable:
        """
        Parses a Donaldson file.

        Raises:
            ParsingError if the file is missing or malformed, or if either
            wavelength axis is not strictly increasing.
        """
        if isinstance(fileobj_or_path, (str, pathlib.Path)):
            try:
                with open(fileobj_or_path, encoding="utf-8", newline="") as f:
                    rows = _read_rows(f)
            except FileNotFoundError:
                raise ParsingError(
                    f"Donaldson file {fileobj_or_path} not existent")
        else:
            rows = _read_rows(fileobj_or_path)

        if len(rows) < 2:
            raise ParsingError(
                "A Donaldson file needs a wavelength row and at least one "
                "matrix row")

        header, body = rows[0], rows[1:]
        lambda_in = _to_floats(header[1:], "incoming wavelengths")
        lambda_out = []
        entries = []
        for index, row in enumerate(body, start=2):
            if len(row) != len(header):
                raise ParsingError(
                    f"Row {index} has {len(row)} cells, expected "
                    f"{len(header)}")
            values = _to_floats(row, f"row {index}")
            lambda_out.append(values[0])
            entries.append(values[1:])

        lambda_in_array = np.array(lambda_in)
        lambda_out_array = np.array(lambda_out)
        for name, axis in (("incoming", lambda_in_array),
                           ("outgoing", lambda_out_array)):
            if np.any(np.diff(axis) <= 0):
                raise ParsingError(
                    f"The {name} wavelength axis is not strictly increasing")

        return cls(lambda_in_array, lambda_out_array, np.array(entries))

    def to_matrix(self) -> DonaldsonMatrix:
        """
        Raises:
            ParsingError if an axis is not uniformly sampled.
        """
        try:
            return DonaldsonMatrix(
                WavelengthGrid.from_samples(self.lambda_in),
                WavelengthGrid.from_samples(self.lambda_out),
                self.entries)
        except SpectralError as e:
            raise ParsingError(f"Invalid Donaldson matrix: {e}") from None


def parse_donaldson(
        fileobj_or_path: Union[TextIOWrapper, pathlib.Path, str]
) -> DonaldsonMatrix:
    return DonaldsonTable.parse(fileobj_or_path).to_matrix()


def save_donaldson(matrix: DonaldsonMatrix, path: pathlib.Path):
    """Writes the matrix so that parsing the file gives back equal entries"""
    with atomicwrites.atomic_write(
            path, newline="", encoding="utf-8", overwrite=True) as f:
        writer = csv.writer(f)
        writer.writerow([""] + [repr(float(x))
                                for x in matrix.grid_in.wavelengths])
        for wavelength, row in zip(matrix.grid_out.wavelengths,
                                   matrix.entries):
            writer.writerow([repr(float(wavelength))]
                            + [repr(float(x)) for x in row])


def _read_rows(f) -> List[List[str]]:
    rows = []
    for row in csv.reader(f):
        cells = [cell.strip() for cell in row]
        if not any(cells) or cells[0].startswith("#"):
            continue
        rows.append(cells)
    return rows


def _to_floats(cells: List[str], what: str) -> List[float]:
    try:
        return [float(x) for x in cells]
    except ValueError:
        raise ParsingError(f"Non numeric entry in {what}") from None
