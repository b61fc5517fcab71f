from __future__ import annotations

import dataclasses
import functools
from typing import Union

import numpy as np

from .exceptions import OffGridError, SpectralError

# Tolerance, relative to the step, used when matching wavelengths to samples
_ON_GRID_TOLERANCE = 1e-6


@dataclasses.dataclass(frozen=True)
class WavelengthGrid:
    """
    Uniform sampling of the wavelength axis, in nanometres, bounds included.
    """
    lambda_min: float
    lambda_max: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise SpectralError(f"Grid step must be positive, got {self.step}")

        span = (self.lambda_max - self.lambda_min) / self.step
        if span < 0 or abs(span - round(span)) > _ON_GRID_TOLERANCE:
            raise SpectralError(
                f"Grid bounds {self.lambda_min}-{self.lambda_max} are not "
                f"an integer number of {self.step} nm steps apart")

    @classmethod
    def canonical(cls) -> WavelengthGrid:
        """The working grid, 300 to 800 nm at 1 nm"""
        return cls(300.0, 800.0, 1.0)

    @classmethod
    def parse(cls, text: str) -> WavelengthGrid:
        """Parses a grid in the form min:max:step"""
        try:
            lambda_min, lambda_max, step = (
                float(x) for x in text.split(":"))
        except ValueError:
            raise SpectralError(
                f"Unable to parse grid '{text}', expected min:max:step")
        return cls(lambda_min, lambda_max, step)

    @classmethod
    def from_samples(cls, wavelengths: np.ndarray) -> WavelengthGrid:
        """
        Builds the grid matching a list of uniformly spaced wavelengths.

        Raises:
            SpectralError if the wavelengths are not increasing and uniform.
        """
        wavelengths = np.asarray(wavelengths, dtype=float)
        if len(wavelengths) < 2:
            raise SpectralError("At least two wavelengths are needed")

        steps = np.diff(wavelengths)
        if np.any(steps <= 0):
            raise SpectralError("Wavelengths must be strictly increasing")

        step = float(steps[0])
        if np.max(np.abs(steps - step)) > _ON_GRID_TOLERANCE * step:
            raise SpectralError("Wavelengths must be uniformly spaced")

        return cls(float(wavelengths[0]), float(wavelengths[-1]), step)

    @property
    def count(self) -> int:
        return int(round((self.lambda_max - self.lambda_min) / self.step)) + 1

    @functools.cached_property
    def wavelengths(self) -> np.ndarray:
        values = self.lambda_min + self.step * np.arange(self.count)
        values.setflags(write=False)
        return values

    @functools.cached_property
    def weights(self) -> np.ndarray:
        """Trapezoid quadrature weights, one per sample"""
        values = np.full(self.count, self.step)
        values[0] = values[-1] = self.step / 2
        values.setflags(write=False)
        return values

    def index(self, wavelength: float) -> int:
        """
        Returns the sample index of a wavelength.

        Raises:
            OffGridError if the wavelength is not one of the samples.
        """
        position = (wavelength - self.lambda_min) / self.step
        index = int(round(position))
        if (abs(position - index) > _ON_GRID_TOLERANCE
                or index < 0 or index >= self.count):
            raise OffGridError(
                f"Wavelength {wavelength} nm is not on the grid {self}")
        return index

    def overlaps(self, other: WavelengthGrid) -> bool:
        return (self.lambda_min <= other.lambda_max
                and other.lambda_min <= self.lambda_max)

    def halved(self) -> WavelengthGrid:
        """The grid over the same range with half the step"""
        return WavelengthGrid(self.lambda_min, self.lambda_max, self.step / 2)

    def __str__(self) -> str:
        return f"{_fmt(self.lambda_min)}:{_fmt(self.lambda_max)}:" \
               f"{_fmt(self.step)}"


def _fmt(value: Union[float, int]) -> str:
    return f"{value:g}"
