"""
Degree-2 B-spline partition of unity over the working range, whose first
element is used as the ultraviolet sensitivity band.
"""
import logging
from typing import Sequence

import numpy as np
from scipy.interpolate import BSpline

from ..spectral.grid import WavelengthGrid
from ..spectral.spectrum import Spectrum
from .exceptions import BasisError

logger = logging.getLogger(__name__)

UV_DEGREE = 2

# Clamped, non-uniform. Five elements; the first one stays above one half
# below 400 nm and vanishes from 645 nm on.
DEFAULT_UV_KNOTS = (300.0, 300.0, 300.0, 645.0, 720.0, 800.0, 800.0, 800.0)

# Wavelength under which the UV band must exceed one half
_UV_HALF_BOUND = 400.0


def partition_of_unity(grid: WavelengthGrid,
                       knots: Sequence[float] = DEFAULT_UV_KNOTS
                       ) -> np.ndarray:
    """
    Evaluates every element of the B-spline partition on the grid.

    Returns: an (N, n) matrix, one column per element. Samples outside the
             knot span are zero.

    Raises:
        BasisError if the knot vector is not a valid clamped vector.
    """
    knots = _check_knots(knots)
    count = len(knots) - UV_DEGREE - 1
    spline = BSpline(knots, np.eye(count), UV_DEGREE, extrapolate=False)
    values = spline(grid.wavelengths)
    return np.nan_to_num(values, nan=0.0)


def build_uv_band(grid: WavelengthGrid,
                  knots: Sequence[float] = DEFAULT_UV_KNOTS) -> Spectrum:
    """
    Returns the first element of the partition of unity.

    Raises:
        BasisError if the resulting band is not monotonically decreasing or
        does not stay above one half below 400 nm.
    """
    band = partition_of_unity(grid, knots)[:, 0]
    _check_uv_band(grid, band, knots)
    logger.info(f"UV band built from knots {list(knots)}")
    return Spectrum(grid, band)


def _check_knots(knots: Sequence[float]) -> np.ndarray:
    knots = np.asarray(knots, dtype=float)
    order = UV_DEGREE + 1
    if knots.ndim != 1 or len(knots) < 2 * order:
        raise BasisError(
            f"A degree {UV_DEGREE} knot vector needs at least "
            f"{2 * order} knots, got {len(knots)}")
    if np.any(np.diff(knots) < 0):
        raise BasisError("Knots must be non-decreasing")
    if (np.any(knots[:order] != knots[0])
            or np.any(knots[-order:] != knots[-1])):
        raise BasisError("Knot vector must be clamped at both ends")
    return knots


def _check_uv_band(grid: WavelengthGrid,
                   band: np.ndarray,
                   knots: Sequence[float]):
    wavelengths = grid.wavelengths
    inside = (wavelengths >= knots[0]) & (wavelengths <= knots[-1])
    if np.any(np.diff(band[inside]) > 1e-12):
        raise BasisError(
            f"UV band from knots {list(knots)} is not monotonically "
            "decreasing")

    below = inside & (wavelengths < _UV_HALF_BOUND)
    if np.any(band[below] <= 0.5):
        raise BasisError(
            f"UV band from knots {list(knots)} drops below 0.5 "
            f"under {_UV_HALF_BOUND:g} nm")
