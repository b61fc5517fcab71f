import functools
import logging
from typing import Optional, Sequence

import numpy as np

from .. import datasets
from ..spectral.exceptions import DisjointGridsError
from ..spectral.grid import WavelengthGrid
from ..spectral.spectrum import tabulated_spectrum
from .basis_set import (
    BasisSet, Space, SEVEN_TRANSFER, XYZ_TRANSFER, XYZU_TRANSFER)
from .bspline import DEFAULT_UV_KNOTS, build_uv_band
from .exceptions import BasisError, DataFileError
from .smoothstep import X_LOBE_SPLIT, X_SPLIT, Y_SPLIT, smoothstep

logger = logging.getLogger(__name__)

BASIS_NAMES = ("xyz", "xyzu", "seven")


def load_cmf_xyz(grid: WavelengthGrid) -> BasisSet:
    """
    The CIE 2006 2° colour matching functions on the grid, zero-extended
    outside the tabulated range.

    Raises:
        DataFileError if the table is unavailable or does not cover the grid.
    """
    return _load_cmf_xyz(grid)


@functools.lru_cache(maxsize=None)
def _load_cmf_xyz(grid: WavelengthGrid) -> BasisSet:
    wavelengths, table = datasets.cmf_table()
    if table.ndim != 2 or table.shape[1] != 3:
        raise DataFileError(
            f"Expected three colour matching functions, got {table.shape}")

    try:
        columns = [
            tabulated_spectrum(wavelengths, table[:, k], grid).values
            for k in range(3)
        ]
    except DisjointGridsError:
        raise DataFileError(
            f"Colour matching functions do not cover grid {grid}") from None

    return BasisSet(
        name="xyz",
        grid=grid,
        S=np.column_stack(columns),
        labels=("x", "y", "z"),
        transfer=XYZ_TRANSFER,
        space=Space.XYZ)


def build_xyzu(grid: WavelengthGrid,
               uv_knots: Sequence[float] = DEFAULT_UV_KNOTS) -> BasisSet:
    """The XYZ colour matching functions plus the UV band"""
    return _build_xyzu(grid, tuple(uv_knots))


@functools.lru_cache(maxsize=None)
def _build_xyzu(grid: WavelengthGrid, uv_knots: tuple) -> BasisSet:
    xyz = load_cmf_xyz(grid)
    uv = build_uv_band(grid, uv_knots)
    return BasisSet(
        name="xyzu",
        grid=grid,
        S=np.column_stack([xyz.S, uv.values]),
        labels=("x", "y", "z", "u"),
        transfer=XYZU_TRANSFER,
        space=Space.XYZU)


def build_seven_band(grid: WavelengthGrid,
                     uv_knots: Sequence[float] = DEFAULT_UV_KNOTS
                     ) -> BasisSet:
    """
    Splits x̄ in three (short lobe, and the main lobe in two) and ȳ in two
    with smoothsteps, keeping z̄ and the UV band. The split bands add back to
    their parent function at every sample.
    """
    return _build_seven_band(grid, tuple(uv_knots))


@functools.lru_cache(maxsize=None)
def _build_seven_band(grid: WavelengthGrid, uv_knots: tuple) -> BasisSet:
    xyzu = build_xyzu(grid, uv_knots)
    x, y, z, u = (xyzu.S[:, k] for k in range(4))
    wavelengths = grid.wavelengths

    lobe = smoothstep(wavelengths, X_LOBE_SPLIT)
    x_step = smoothstep(wavelengths, X_SPLIT)
    y_step = smoothstep(wavelengths, Y_SPLIT)

    x1 = x * (1 - lobe)
    x2 = x * lobe * x_step
    x3 = x * lobe * (1 - x_step)
    y1 = y * y_step
    y2 = y * (1 - y_step)

    return BasisSet(
        name="seven",
        grid=grid,
        S=np.column_stack([x1, x2, x3, y1, y2, z, u]),
        labels=("x1", "x2", "x3", "y1", "y2", "z", "u"),
        transfer=SEVEN_TRANSFER,
        space=Space.SEVEN)


def build_basis(name: str,
                grid: WavelengthGrid,
                uv_knots: Optional[Sequence[float]] = None) -> BasisSet:
    """
    Builds one of the named bases: xyz, xyzu or seven.

    Raises:
        BasisError for an unknown name.
    """
    knots = DEFAULT_UV_KNOTS if uv_knots is None else tuple(uv_knots)
    if name == "xyz":
        return load_cmf_xyz(grid)
    elif name == "xyzu":
        return build_xyzu(grid, knots)
    elif name == "seven":
        return build_seven_band(grid, knots)

    raise BasisError(
        f"Unknown basis {name}. Available: {', '.join(BASIS_NAMES)}")
