"""
Reduced matrix text format:

    <space>=<K_in>,<K_out>,<basis_in>,<basis_out>
    # method=ours
    # key=value
    r00,r01,...

Rows are written with repr so reading a file back gives identical entries.
"""
import pathlib
from io import TextIOWrapper
from typing import Dict, Optional, Tuple, Union

import atomicwrites

from ..bases.basis_set import Space
from ..reduction import Method, NaiveNorm, ReducedMatrix, ReductionError
from .exceptions import ParsingError

_RESERVED_KEYS = ("method", "norm")


def save_reduced(matrix: ReducedMatrix,
                 path: pathlib.Path,
                 metadata: Optional[Dict[str, str]] = None):
    header = (f"{matrix.space}={matrix.size_in},{matrix.size_out},"
              f"{matrix.basis_in},{matrix.basis_out}")
    lines = [header, f"# method={matrix.method}"]
    if matrix.norm is not None:
        lines.append(f"# norm={matrix.norm}")
    for key, value in (metadata or {}).items():
        if key in _RESERVED_KEYS:
            continue
        lines.append(f"# {key}={value}")
    for row in matrix.entries:
        lines.append(",".join(repr(float(x)) for x in row))

    with atomicwrites.atomic_write(
            path, encoding="utf-8", overwrite=True) as f:
        f.write("\n".join(lines) + "\n")


def parse_reduced(
        fileobj_or_path: Union[TextIOWrapper, pathlib.Path, str]
) -> Tuple[ReducedMatrix, Dict[str, str]]:
    """
    Parses a reduced matrix file.

    Returns: the matrix, and the metadata found in the comment lines other
             than the method and norm.

    Raises:
        ParsingError if the file is missing or malformed.
    """
    if isinstance(fileobj_or_path, (str, pathlib.Path)):
        try:
            with open(fileobj_or_path, encoding="utf-8") as f:
                lines = f.read().splitlines()
        except FileNotFoundError:
            raise ParsingError(
                f"Reduced matrix file {fileobj_or_path} not existent")
    else:
        lines = fileobj_or_path.read().splitlines()

    lines = [line.strip() for line in lines if line.strip()]
    if not lines:
        raise ParsingError("Empty reduced matrix file")

    space, size_in, size_out, basis_in, basis_out = _parse_header(lines[0])

    metadata: Dict[str, str] = {}
    rows = []
    for line in lines[1:]:
        if line.startswith("#"):
            key, sep, value = line[1:].strip().partition("=")
            if not sep:
                raise ParsingError(f"Invalid metadata line '{line}'")
            metadata[key.strip()] = value.strip()
            continue
        try:
            rows.append([float(x) for x in line.split(",")])
        except ValueError:
            raise ParsingError(f"Non numeric row '{line}'") from None

    if len(rows) != size_out or any(len(row) != size_in for row in rows):
        raise ParsingError(
            f"Expected {size_out} rows of {size_in} entries")

    try:
        method = Method(metadata.pop("method", "ours"))
        norm_value = metadata.pop("norm", None)
        norm = NaiveNorm(norm_value) if norm_value is not None else None
        matrix = ReducedMatrix(rows, basis_in, basis_out, space, method, norm)
    except (ValueError, ReductionError) as e:
        raise ParsingError(f"Invalid reduced matrix: {e}") from None

    return matrix, metadata


def _parse_header(line: str) -> Tuple[Space, int, int, str, str]:
    space_name, sep, rest = line.partition("=")
    parts = rest.split(",")
    if not sep or len(parts) != 4:
        raise ParsingError(
            f"Invalid header '{line}', expected "
            "space=K_in,K_out,basis_in,basis_out")
    try:
        space = Space(space_name.strip().lower())
        size_in, size_out = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParsingError(f"Invalid header '{line}'") from None
    return space, size_in, size_out, parts[2].strip(), parts[3].strip()
