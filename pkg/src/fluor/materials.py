"""
Fluorescent materials: ingestion of measured Donaldson matrices, synthetic
stand-ins with a Stokes-shifted reradiation bump, and sanity reports.
"""
from __future__ import annotations

import dataclasses
import enum
import logging
import pathlib
from typing import Dict, Iterator, List, Optional

import numpy as np

from .parsers.donaldson import parse_donaldson, save_donaldson as _save
from .parsers.manifest import parse_manifest
from .spectral.donaldson import DonaldsonMatrix
from .spectral.grid import WavelengthGrid
from .spectral.spectrum import (
    Spectrum, constant_spectrum, gaussian_spectrum, quadrature_integrate)

logger = logging.getLogger(__name__)

# Measured sample known to be inconsistent, never loaded
EXCLUDED_MATERIALS = ("IXCAXORA",)

IDENTITY = "identity"
GREY = "grey"


class MaterialError(ValueError):
    pass


class Provenance(enum.Enum):
    MEASURED = "measured"
    SYNTHETIC = "synthetic"

    def __str__(self) -> str:
        return self.value


@dataclasses.dataclass(frozen=True)
class FluorescentMaterial:
    name: str
    P: DonaldsonMatrix
    provenance: Provenance
    # Negative entries set to zero at ingestion
    clamped: int = 0


@dataclasses.dataclass(frozen=True)
class ValidationReport:
    name: str
    anti_stokes_fraction: float
    max_row_integral: float
    clamped: int

    def asdict(self) -> dict:
        return dataclasses.asdict(self)


def load_donaldson(path: pathlib.Path,
                   grid: Optional[WavelengthGrid] = None,
                   name: Optional[str] = None) -> FluorescentMaterial:
    """
    Loads a measured Donaldson file, clamps its negative entries and
    resamples it onto the grid (canonical by default).

    Raises:
        ParsingError if the file is missing or malformed.
    """
    grid = grid or WavelengthGrid.canonical()
    path = pathlib.Path(path)
    name = name or path.stem

    matrix, clamped = parse_donaldson(path).clamped()
    if clamped:
        logger.info(f"Clamped {clamped} negative entries of {name}")

    return FluorescentMaterial(
        name=name,
        P=matrix.resample(grid),
        provenance=Provenance.MEASURED,
        clamped=clamped)


def save_donaldson(material: FluorescentMaterial, path: pathlib.Path):
    _save(material.P, path)


def identity_material(grid: WavelengthGrid) -> FluorescentMaterial:
    return FluorescentMaterial(
        IDENTITY, DonaldsonMatrix.identity(grid), Provenance.SYNTHETIC)


def diffuse_material(name: str, albedo: Spectrum) -> FluorescentMaterial:
    """A purely reflective material"""
    return FluorescentMaterial(
        name, DonaldsonMatrix.from_albedo(albedo), Provenance.SYNTHETIC)


def synth_fluorescent(absorb_mu: float,
                      absorb_sigma: float,
                      emit_mu: float,
                      emit_sigma: float,
                      strength: float,
                      diag_albedo: Spectrum,
                      name: str = "synthetic") -> FluorescentMaterial:
    """
    Builds a material reflecting diag_albedo and reradiating light absorbed
    around absorb_mu into a band around emit_mu.

    The reradiation density is strength·g_out(λ_o)·g_in(λ_i)/∫g_out, with
    unit peak Gaussians g, restricted to λ_o > λ_i. Dividing by ∫g_out
    makes strength the fraction of the light absorbed at the absorption
    peak that is reradiated, whatever the emission width: a unit delta at
    λ_i is reradiated with at most strength·g_in(λ_i) total energy.

    Raises:
        MaterialError if emission is not at longer wavelengths than
        absorption, or strength is negative.
    """
    if not emit_mu > absorb_mu:
        raise MaterialError(
            f"Emission at {emit_mu} nm must be at longer wavelengths than "
            f"absorption at {absorb_mu} nm")
    if strength < 0:
        raise MaterialError(f"Strength must be non-negative, got {strength}")

    grid = diag_albedo.grid
    g_in = gaussian_spectrum(absorb_mu, absorb_sigma, grid)
    g_out = gaussian_spectrum(emit_mu, emit_sigma, grid)

    wavelengths = grid.wavelengths
    stokes = wavelengths[:, None] > wavelengths[None, :]
    density = np.where(
        stokes,
        np.outer(g_out.values, g_in.values) / quadrature_integrate(g_out),
        0.0) * strength

    P = DonaldsonMatrix.from_albedo(diag_albedo) + \
        DonaldsonMatrix.from_density(density, grid)
    return FluorescentMaterial(name, P, Provenance.SYNTHETIC)


def validate(material: FluorescentMaterial) -> ValidationReport:
    """
    Reports the fraction of reradiated energy going to shorter wavelengths
    (anti-Stokes), the largest energy returned for a unit input at one
    wavelength, and how many entries were clamped at ingestion.
    """
    P = material.P
    lambda_in = P.grid_in.wavelengths
    lambda_out = P.grid_out.wavelengths

    energy = P.grid_out.weights[:, None] * np.abs(P.entries)
    total = float(np.sum(energy))
    anti_stokes = lambda_out[:, None] < lambda_in[None, :]
    fraction = float(np.sum(energy[anti_stokes])) / total if total > 0 \
        else 0.0

    row_integrals = np.sum(energy, axis=0) / P.grid_in.weights
    if fraction > 0:
        logger.warning(
            f"{material.name} sends {fraction:.3%} of its energy to "
            "shorter wavelengths")

    return ValidationReport(
        name=material.name,
        anti_stokes_fraction=fraction,
        max_row_integral=float(np.max(row_integrals)),
        clamped=material.clamped)


@dataclasses.dataclass(frozen=True)
class SyntheticPreset:
    """
    Parameters of a synthetic material. The reflectance is
    level·(1 - depth·g_in), so light absorbed for reradiation is missing
    from the reflected part.
    """
    name: str
    absorb_mu: float
    absorb_sigma: float
    emit_mu: float
    emit_sigma: float
    strength: float
    level: float = 0.8
    depth: float = 0.8

    def build(self, grid: WavelengthGrid) -> FluorescentMaterial:
        g_in = gaussian_spectrum(self.absorb_mu, self.absorb_sigma, grid)
        albedo = Spectrum(
            grid, self.level * (1.0 - self.depth * g_in.values))
        return synth_fluorescent(
            self.absorb_mu, self.absorb_sigma,
            self.emit_mu, self.emit_sigma,
            self.strength, albedo, self.name)


SYNTHETIC_PRESETS = (
    SyntheticPreset("uv_blue_brightener", 350, 25, 440, 25, 0.55),
    SyntheticPreset("uv_cyan", 360, 30, 480, 30, 0.5),
    SyntheticPreset("uv_yellow", 350, 30, 550, 40, 0.5),
    SyntheticPreset("violet_blue", 400, 25, 465, 30, 0.5),
    SyntheticPreset("blue_green", 440, 30, 520, 30, 0.5),
    SyntheticPreset("cyan_green", 470, 25, 530, 25, 0.45),
    SyntheticPreset("green_yellow", 490, 30, 560, 30, 0.5),
    SyntheticPreset("blue_yellow", 460, 40, 580, 30, 0.6, 0.85, 0.85),
    SyntheticPreset("green_orange", 520, 30, 600, 30, 0.5),
    SyntheticPreset("orange_red", 540, 30, 620, 30, 0.5),
    SyntheticPreset("magenta", 530, 35, 610, 25, 0.45, 0.7, 0.9),
    SyntheticPreset("red_pigment", 560, 30, 650, 30, 0.4),
)


def synthetic_library(grid: WavelengthGrid,
                      include_reference: bool = False
                      ) -> Dict[str, FluorescentMaterial]:
    """
    The bundled synthetic fluorescent materials. With include_reference, the
    identity and a 0.5 grey diffuse material are added.
    """
    library = {preset.name: preset.build(grid)
               for preset in SYNTHETIC_PRESETS}
    if include_reference:
        library[IDENTITY] = identity_material(grid)
        library[GREY] = diffuse_material(GREY, constant_spectrum(0.5, grid))
    return library


class MaterialLibrary:
    """Named materials on a common grid"""

    def __init__(self,
                 grid: WavelengthGrid,
                 materials: Optional[Dict[str, FluorescentMaterial]] = None):
        self.grid = grid
        self._materials: Dict[str, FluorescentMaterial] = {}
        for material in (materials or {}).values():
            self.add(material)

    @classmethod
    def synthetic(cls, grid: WavelengthGrid) -> MaterialLibrary:
        return cls(grid, synthetic_library(grid, include_reference=True))

    @classmethod
    def from_manifest(cls,
                      path: pathlib.Path,
                      grid: WavelengthGrid) -> MaterialLibrary:
        """
        Loads every material listed in a manifest, skipping excluded ones.

        Raises:
            ParsingError if the manifest or one of the files is invalid.
        """
        library = cls(grid)
        for name, location in parse_manifest(path).items():
            if name.upper() in EXCLUDED_MATERIALS:
                logger.info(f"Skipping excluded material {name}")
                continue
            library.add(load_donaldson(location, grid, name))
        return library

    def add(self, material: FluorescentMaterial):
        if material.name.upper() in EXCLUDED_MATERIALS:
            logger.info(f"Skipping excluded material {material.name}")
            return
        if material.P.grid_in != self.grid or material.P.grid_out != self.grid:
            raise MaterialError(
                f"Material {material.name} is not on grid {self.grid}")
        self._materials[material.name] = material

    def get(self, name: str) -> FluorescentMaterial:
        try:
            return self._materials[name]
        except KeyError:
            raise MaterialError(
                f"Unknown material {name}. Available: "
                f"{', '.join(self.names)}") from None

    @property
    def names(self) -> List[str]:
        return list(self._materials)

    def __contains__(self, name: str) -> bool:
        return name in self._materials

    def __iter__(self) -> Iterator[FluorescentMaterial]:
        return iter(self._materials.values())

    def __len__(self) -> int:
        return len(self._materials)
