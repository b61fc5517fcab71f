"""
Illuminants, display conversion and colour differences.
"""
from __future__ import annotations

import dataclasses
import functools
import logging

import colour
import numpy as np

from . import datasets
from .spectral.exceptions import DisjointGridsError
from .spectral.grid import WavelengthGrid
from .spectral.spectrum import (
    Spectrum, constant_spectrum, gaussian_spectrum, tabulated_spectrum)

logger = logging.getLogger(__name__)

# Evaluation columns, in report order
STANDARD_ILLUMINANTS = ("A", "E", "D60", "D65", "FL1", "FL2", "HP5")

GAUSSIAN_ILLUMINANTS = {
    "Gauss350": (350.0, 50.0),
    "Gauss450": (450.0, 50.0),
}

ILLUMINANT_NAMES = STANDARD_ILLUMINANTS + tuple(GAUSSIAN_ILLUMINANTS)

# Illuminants with energy under this wavelength are considered UV rich
UV_LIMIT = 400.0

M_XYZ_TO_SRGB = np.array(colour.models.RGB_COLOURSPACE_sRGB.matrix_XYZ_to_RGB)
M_XYZ_TO_SRGB.setflags(write=False)


class ColorimetryError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class Illuminant:
    name: str
    spectrum: Spectrum

    @property
    def has_uv(self) -> bool:
        """True if the illuminant emits below 400 nm"""
        below = self.spectrum.wavelengths < UV_LIMIT
        return bool(np.any(self.spectrum.values[below] > 0))


def illuminant(name: str, grid: WavelengthGrid) -> Illuminant:
    """
    Returns a named illuminant on the grid, zero-extended where its table
    stops. Tabulated illuminants are normalized to 100 at 560 nm.

    Raises:
        ColorimetryError for an unknown name.
        DataFileError if the table is unavailable.
    """
    return _illuminant(name, grid)


@functools.lru_cache(maxsize=None)
def _illuminant(name: str, grid: WavelengthGrid) -> Illuminant:
    if name == "E":
        return Illuminant(name, constant_spectrum(1.0, grid))
    if name in GAUSSIAN_ILLUMINANTS:
        mu, sigma = GAUSSIAN_ILLUMINANTS[name]
        return Illuminant(name, gaussian_spectrum(mu, sigma, grid))
    if name not in STANDARD_ILLUMINANTS:
        raise ColorimetryError(
            f"Unknown illuminant {name}. Available: "
            f"{', '.join(ILLUMINANT_NAMES)}")

    wavelengths, values = datasets.illuminant_table(name)
    reference = np.interp(560.0, wavelengths, values)
    if reference > 0:
        values = values * (100.0 / reference)

    try:
        spectrum = tabulated_spectrum(wavelengths, values, grid)
    except DisjointGridsError:
        raise ColorimetryError(
            f"Illuminant {name} does not cover grid {grid}") from None
    return Illuminant(name, spectrum)


def xyz_to_linear_srgb(xyz: np.ndarray) -> np.ndarray:
    """The sRGB matrix alone, no transfer curve"""
    return np.asarray(xyz, dtype=float) @ M_XYZ_TO_SRGB.T


def xyz_to_srgb(xyz: np.ndarray) -> np.ndarray:
    """
    Converts XYZ (white at Y=1) to sRGB encoded values. Out of gamut colours
    are not clamped.
    """
    return colour.models.eotf_inverse_sRGB(xyz_to_linear_srgb(xyz))


def xyz_to_display(xyz: np.ndarray) -> np.ndarray:
    """sRGB encoded values clamped to [0, 1]"""
    return np.clip(
        colour.models.eotf_inverse_sRGB(
            np.clip(xyz_to_linear_srgb(xyz), 0.0, None)),
        0.0, 1.0)


def xyz_to_rgb8(xyz: np.ndarray) -> np.ndarray:
    return np.round(xyz_to_display(xyz) * 255).astype(np.uint8)


def xyz_to_lab(xyz: np.ndarray, white: np.ndarray) -> np.ndarray:
    """
    CIELAB relative to a white point, the white mapping to L=100.

    Raises:
        ColorimetryError if the white luminance is not positive.
    """
    white = np.asarray(white, dtype=float)
    if not white[1] > 0:
        raise ColorimetryError(
            f"White point luminance must be positive, got {white[1]}")
    return colour.XYZ_to_Lab(
        np.asarray(xyz, dtype=float) / white[1],
        illuminant=colour.XYZ_to_xy(white))


def delta_e_2000_lab(lab1: np.ndarray, lab2: np.ndarray) -> np.ndarray:
    """CIEDE2000 between Lab colours"""
    return colour.difference.delta_E_CIE2000(
        np.asarray(lab1, dtype=float), np.asarray(lab2, dtype=float))


def delta_e_2000(c1: np.ndarray,
                 c2: np.ndarray,
                 white: np.ndarray) -> float:
    """
    CIEDE2000 between two XYZ colours seen under the given white.

    Raises:
        ColorimetryError if the white luminance is not positive.
    """
    return float(delta_e_2000_lab(xyz_to_lab(c1, white),
                                  xyz_to_lab(c2, white)))
