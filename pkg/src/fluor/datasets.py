"""
Access to the tabulated data the library depends on: the CIE 2006 2° colour
matching functions and the CIE illuminants.

Tables are read from the directory named by the FLUOR_DATA_DIR environment
variable when it provides them (cmf_xyz.csv, illuminants/<NAME>.csv), and
from the colour-science datasets otherwise.
"""
import logging
import os
import pathlib
from typing import Optional, Tuple

import colour
import numpy as np

from .bases.exceptions import DataFileError
from .parsers.exceptions import ParsingError
from .parsers.tables import read_columns

logger = logging.getLogger(__name__)

DATA_DIR_ENV = "FLUOR_DATA_DIR"
CMF_FILENAME = "cmf_xyz.csv"
ILLUMINANTS_DIRNAME = "illuminants"

# colour-science names of the CIE 2006 LMS-derived 2° XYZ observer
CIE_2006_OBSERVERS = ("CIE 2015 2 Degree Standard Observer",
                      "CIE 2012 2 Degree Standard Observer")

# Illuminants tabulated by colour-science under the same name
_COLOUR_TABULATED = ("D65", "FL1", "FL2", "HP5")

# Correlated colour temperature of D60 on the current radiation constant
_D60_CCT = 6000.0 * 1.4388 / 1.4380


def data_dir() -> Optional[pathlib.Path]:
    """
    Returns the override data directory, or None if not configured.

    Raises:
        DataFileError if the variable points to a missing directory.
    """
    value = os.environ.get(DATA_DIR_ENV)
    if not value:
        return None

    path = pathlib.Path(value).expanduser()
    if not path.is_dir():
        raise DataFileError(
            f"{DATA_DIR_ENV} points to {path}, which is not a directory")
    return path


def cmf_table() -> Tuple[np.ndarray, np.ndarray]:
    """
    Returns the wavelengths and the (N, 3) x̄ ȳ z̄ table of the CIE 2006 2°
    observer.
    """
    override = _override_path(CMF_FILENAME)
    if override is not None:
        logger.info(f"Reading colour matching functions from {override}")
        return _read_override(override, 3)

    for name in CIE_2006_OBSERVERS:
        if name in colour.MSDS_CMFS:
            cmfs = colour.MSDS_CMFS[name]
            return np.asarray(cmfs.wavelengths), np.asarray(cmfs.values)

    raise DataFileError("CIE 2006 colour matching functions unavailable")


def illuminant_table(name: str) -> Tuple[np.ndarray, np.ndarray]:
    """
    Returns the wavelengths and relative spectral power of a CIE illuminant.

    Args:
        name: one of A, D60, D65, FL1, FL2, HP5

    Raises:
        DataFileError if the illuminant is not available.
    """
    override = _override_path(ILLUMINANTS_DIRNAME, f"{name}.csv")
    if override is not None:
        logger.info(f"Reading illuminant {name} from {override}")
        wavelengths, values = _read_override(override, 1)
        return wavelengths, values[:, 0]

    try:
        if name == "A":
            sd = colour.sd_CIE_standard_illuminant_A(
                colour.SpectralShape(300, 830, 1))
        elif name == "D60":
            sd = colour.sd_CIE_illuminant_D_series(
                colour.temperature.CCT_to_xy_CIE_D(_D60_CCT))
        elif name in _COLOUR_TABULATED:
            sd = colour.SDS_ILLUMINANTS[name]
        else:
            raise KeyError(name)
    except KeyError as e:
        raise DataFileError(f"Illuminant {name} unavailable: {e}") from None

    return np.asarray(sd.wavelengths), np.asarray(sd.values)


def _override_path(*parts: str) -> Optional[pathlib.Path]:
    base = data_dir()
    if base is None:
        return None

    path = base.joinpath(*parts)
    return path if path.exists() else None


def _read_override(path: pathlib.Path,
                   columns: int) -> Tuple[np.ndarray, np.ndarray]:
    try:
        return read_columns(path, columns)
    except ParsingError as e:
        raise DataFileError(f"Unable to read {path}: {e}") from None
