from __future__ import annotations

import dataclasses
from typing import Union

import numpy as np

from .exceptions import DisjointGridsError, GridMismatchError, SpectralError
from .grid import WavelengthGrid


@dataclasses.dataclass(frozen=True, eq=False)
class Spectrum:
    """A function of wavelength sampled on a grid. Immutable."""
    grid: WavelengthGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.grid.count, ):
            raise SpectralError(
                f"Expected {self.grid.count} samples for grid {self.grid}, "
                f"got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise SpectralError("Spectrum values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def wavelengths(self) -> np.ndarray:
        return self.grid.wavelengths

    def value_at(self, wavelength: float) -> float:
        """The sample at an on-grid wavelength"""
        return float(self.values[self.grid.index(wavelength)])

    def is_non_negative(self) -> bool:
        return bool(np.all(self.values >= 0))

    def scaled(self, factor: float) -> Spectrum:
        return Spectrum(self.grid, self.values * factor)

    def __add__(self, other: Spectrum) -> Spectrum:
        _check_same_grid(self.grid, other.grid)
        return Spectrum(self.grid, self.values + other.values)

    def __sub__(self, other: Spectrum) -> Spectrum:
        _check_same_grid(self.grid, other.grid)
        return Spectrum(self.grid, self.values - other.values)

    def __mul__(self, other: Union[Spectrum, float]) -> Spectrum:
        if isinstance(other, Spectrum):
            _check_same_grid(self.grid, other.grid)
            return Spectrum(self.grid, self.values * other.values)
        return self.scaled(float(other))

    __rmul__ = __mul__


def constant_spectrum(value: float, grid: WavelengthGrid) -> Spectrum:
    return Spectrum(grid, np.full(grid.count, float(value)))


def zero_spectrum(grid: WavelengthGrid) -> Spectrum:
    return constant_spectrum(0.0, grid)


def tabulated_spectrum(wavelengths: np.ndarray,
                       values: np.ndarray,
                       grid: WavelengthGrid) -> Spectrum:
    """
    Builds a spectrum on a grid from tabulated samples, which do not need to
    be uniformly spaced. Linear interpolation inside the table, zero outside.

    Raises:
        DisjointGridsError if the table does not overlap the grid.
    """
    wavelengths = np.asarray(wavelengths, dtype=float)
    if wavelengths[-1] < grid.lambda_min or wavelengths[0] > grid.lambda_max:
        raise DisjointGridsError("disjoint grids")

    return Spectrum(
        grid,
        np.interp(grid.wavelengths, wavelengths, values, left=0.0, right=0.0)
    )


def resample(spectrum: Spectrum, target: WavelengthGrid) -> Spectrum:
    """
    Resamples a spectrum on a target grid.

    Args:
        spectrum: the spectrum to resample
        target: the grid of the result

    Returns: linear interpolation inside the source support and zero outside
             it. Resampling onto the source grid returns the spectrum itself.

    Raises:
        DisjointGridsError if the two grids do not overlap.
    """
    if spectrum.grid == target:
        return spectrum

    if not spectrum.grid.overlaps(target):
        raise DisjointGridsError("disjoint grids")

    return tabulated_spectrum(spectrum.wavelengths, spectrum.values, target)


def gaussian_spectrum(mu: float,
                      sigma: float,
                      grid: WavelengthGrid) -> Spectrum:
    """Unit-peak Gaussian exp(-(λ-μ)²/(2σ²))"""
    if not sigma > 0:
        raise SpectralError(f"Gaussian width must be positive, got {sigma}")
    return Spectrum(
        grid,
        np.exp(-(grid.wavelengths - mu) ** 2 / (2 * sigma ** 2))
    )


def delta_spectrum(lambda0: float, grid: WavelengthGrid) -> Spectrum:
    """
    Discrete Dirac delta at an on-grid wavelength.

    The sample carries the inverse of its quadrature weight, so the delta
    integrates to one and sifts exactly under quadrature_integrate.

    Raises:
        OffGridError if lambda0 is not a grid sample.
    """
    index = grid.index(lambda0)
    values = np.zeros(grid.count)
    values[index] = 1.0 / grid.weights[index]
    return Spectrum(grid, values)


def quadrature_integrate(spectrum: Spectrum) -> float:
    """Trapezoid rule over the spectrum's grid"""
    return float(np.dot(spectrum.grid.weights, spectrum.values))


def _check_same_grid(a: WavelengthGrid, b: WavelengthGrid):
    if a != b:
        raise GridMismatchError(f"Grid mismatch: {a} vs {b}")
