from __future__ import annotations

import dataclasses
import logging
from typing import Tuple

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .exceptions import DisjointGridsError, GridMismatchError, SpectralError
from .grid import WavelengthGrid
from .spectrum import Spectrum

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class DonaldsonMatrix:
    """
    Discretized reradiation matrix of a diffuse material.

    Rows follow the outgoing wavelengths, columns the incoming ones. The
    entries form the bounce operator itself: one dense bounce of an
    incoming spectrum is ``entries @ L_i``. Off the diagonal an entry is the
    reradiation density P(λ_i, λ_o) times the quadrature weight of λ_i; on
    the diagonal (λ_i = λ_o) it is the reflectance at that wavelength.
    """
    grid_in: WavelengthGrid
    grid_out: WavelengthGrid
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        expected = (self.grid_out.count, self.grid_in.count)
        if entries.shape != expected:
            raise SpectralError(
                f"Expected a {expected} Donaldson matrix, "
                f"got {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise SpectralError("Donaldson entries must be finite")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def identity(cls, grid: WavelengthGrid) -> DonaldsonMatrix:
        """The non-fluorescent, perfectly white material"""
        return cls(grid, grid, np.eye(grid.count))

    @classmethod
    def zeros(cls, grid: WavelengthGrid) -> DonaldsonMatrix:
        return cls(grid, grid, np.zeros((grid.count, grid.count)))

    @classmethod
    def from_albedo(cls, albedo: Spectrum) -> DonaldsonMatrix:
        """Purely reflective material with the given spectral albedo"""
        return cls(albedo.grid, albedo.grid, np.diag(albedo.values))

    @classmethod
    def from_density(cls,
                     density: np.ndarray,
                     grid: WavelengthGrid) -> DonaldsonMatrix:
        """
        Builds the operator of a continuous reradiation density sampled as
        density[o, i] = P(λ_i, λ_o) on a square grid.
        """
        return cls(grid, grid, np.asarray(density) * grid.weights[None, :])

    @property
    def is_square(self) -> bool:
        return self.grid_in == self.grid_out

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def diagonal(self) -> Spectrum:
        """The reflectance part of a square matrix"""
        self._check_square()
        return Spectrum(self.grid_in, np.diag(self.entries))

    def apply(self, spectrum: Spectrum) -> Spectrum:
        """One dense bounce of an incoming spectrum"""
        if spectrum.grid != self.grid_in:
            raise GridMismatchError(
                f"Spectrum on {spectrum.grid} cannot be reradiated by a "
                f"matrix on {self.grid_in}")
        return Spectrum(self.grid_out, self.entries @ spectrum.values)

    def scaled(self, factor: float) -> DonaldsonMatrix:
        return DonaldsonMatrix(
            self.grid_in, self.grid_out, self.entries * factor)

    def __add__(self, other: DonaldsonMatrix) -> DonaldsonMatrix:
        if (self.grid_in, self.grid_out) != (other.grid_in, other.grid_out):
            raise GridMismatchError("Donaldson matrices on different grids")
        return DonaldsonMatrix(
            self.grid_in, self.grid_out, self.entries + other.entries)

    def clamped(self) -> Tuple[DonaldsonMatrix, int]:
        """
        Returns a copy with negative entries set to zero, and how many were.
        """
        negatives = int(np.count_nonzero(self.entries < 0))
        if negatives == 0:
            return self, 0
        return DonaldsonMatrix(
            self.grid_in, self.grid_out, np.maximum(self.entries, 0.0)
        ), negatives

    def resample(self, grid: WavelengthGrid) -> DonaldsonMatrix:
        """
        Resamples both axes onto a square grid.

        The reflective cells (λ_i = λ_o) are resampled as a spectrum, the
        reradiation density bilinearly, both zero-extended. Resampling onto
        the matrix' own square grid returns the matrix itself.
        """
        if self.grid_in == grid and self.grid_out == grid:
            return self

        if not (self.grid_in.overlaps(grid) and self.grid_out.overlaps(grid)):
            raise DisjointGridsError("disjoint grids")

        lambda_in = self.grid_in.wavelengths
        lambda_out = self.grid_out.wavelengths
        rows, cols = _reflective_cells(lambda_out, lambda_in, grid.step)

        density = self.entries / self.grid_in.weights[None, :]
        density[rows, cols] = 0.0

        reflectance = np.zeros(grid.count)
        if len(rows):
            reflectance = np.interp(
                grid.wavelengths, lambda_in[cols], self.entries[rows, cols],
                left=0.0, right=0.0)

        interpolator = RegularGridInterpolator(
            (lambda_out, lambda_in), density,
            method="linear", bounds_error=False, fill_value=0.0)
        out_mesh, in_mesh = np.meshgrid(
            grid.wavelengths, grid.wavelengths, indexing="ij")
        resampled = interpolator(
            np.stack([out_mesh.ravel(), in_mesh.ravel()], axis=-1)
        ).reshape(grid.count, grid.count)

        entries = resampled * grid.weights[None, :]
        entries[np.diag_indices(grid.count)] += reflectance

        logger.info(
            f"Resampled Donaldson matrix {self.grid_in} x {self.grid_out} "
            f"to {grid}")
        return DonaldsonMatrix(grid, grid, entries)

    def _check_square(self):
        if not self.is_square:
            raise GridMismatchError(
                "Operation only defined when both axes share one grid")


def _reflective_cells(lambda_out: np.ndarray,
                      lambda_in: np.ndarray,
                      step: float) -> Tuple[np.ndarray, np.ndarray]:
    """Indices of the cells where the outgoing and incoming wavelength match"""
    matches = np.abs(lambda_out[:, None] - lambda_in[None, :]) < 1e-6 * step
    return np.nonzero(matches)
