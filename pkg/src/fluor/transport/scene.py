from __future__ import annotations

import dataclasses
import logging
import pathlib
from typing import List, Optional, Tuple

from ..colorimetry import ILLUMINANT_NAMES, illuminant
from ..materials import FluorescentMaterial, MaterialLibrary
from ..parsers.scene import SceneDescription
from ..parsers.tables import read_spectrum
from ..spectral.grid import WavelengthGrid
from ..spectral.spectrum import Spectrum
from .exceptions import SceneError
from .geometry import Camera, Quad

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class PatchScene:
    """A flat Lambertian patch under unit hemispherical irradiance"""
    material: FluorescentMaterial
    illuminant: Spectrum


@dataclasses.dataclass(frozen=True, eq=False)
class ProbeScene:
    """
    Lambertian quads lit by one rectangular, one-sided emitter and seen
    through a pinhole camera. ``materials`` holds one material per quad.
    """
    quads: Tuple[Quad, ...]
    materials: Tuple[FluorescentMaterial, ...]
    emitter: Quad
    emitter_spectrum: Spectrum
    camera: Camera
    bounces: int = 3
    directions: int = 4
    light_samples: int = 4

    def __post_init__(self):
        if len(self.quads) != len(self.materials):
            raise SceneError("Every quad needs exactly one material")
        if not self.quads:
            raise SceneError("A scene needs at least one quad")
        for name in ("bounces", "directions", "light_samples"):
            if getattr(self, name) < 1:
                raise SceneError(f"{name} must be at least 1")

    @property
    def grid(self) -> WavelengthGrid:
        return self.emitter_spectrum.grid

    def with_materials(self,
                       materials: List[FluorescentMaterial]) -> ProbeScene:
        return dataclasses.replace(self, materials=tuple(materials))

    def with_emitter_spectrum(self, spectrum: Spectrum) -> ProbeScene:
        return dataclasses.replace(self, emitter_spectrum=spectrum)

    @classmethod
    def from_description(cls,
                         description: SceneDescription,
                         library: MaterialLibrary) -> ProbeScene:
        """
        Builds a scene from its parsed description, looking materials up
        in the library.

        Raises:
            SceneError for unknown materials or an invalid geometry.
            ParsingError if the emitter spectrum file is invalid.
        """
        grid = library.grid
        quads = []
        materials = []
        for spec in description.quads:
            if spec.material not in library:
                raise SceneError(
                    f"Scene references unknown material {spec.material}")
            quads.append(Quad(spec.corner, spec.edge_u, spec.edge_v))
            materials.append(library.get(spec.material))

        emitter = description.emitter
        camera = description.camera
        return cls(
            quads=tuple(quads),
            materials=tuple(materials),
            emitter=Quad(emitter.corner, emitter.edge_u, emitter.edge_v),
            emitter_spectrum=_emitter_spectrum(
                emitter.spectrum, grid, description.base_dir),
            camera=Camera(camera.position, camera.target, camera.fov,
                          camera.width, camera.height),
            bounces=description.bounces,
            directions=description.directions,
            light_samples=description.light_samples)


def default_probe_scene(grid: WavelengthGrid,
                        material: FluorescentMaterial,
                        floor: FluorescentMaterial,
                        emitter_spectrum: Optional[Spectrum] = None,
                        width: int = 64,
                        height: int = 64,
                        bounces: int = 3,
                        directions: int = 4,
                        light_samples: int = 4) -> ProbeScene:
    """
    A box corner: two walls of the probed material meeting in a crease
    over a floor, lit from above by an emitter kept away from the walls.
    """
    if emitter_spectrum is None:
        emitter_spectrum = illuminant("D65", grid).spectrum

    quads = (
        Quad((-1, 0, -1), (0, 0, 2), (2, 0, 0)),     # floor, faces +y
        Quad((-1, 0, -1), (2, 0, 0), (0, 2, 0)),     # back wall, faces +z
        Quad((-1, 0, -1), (0, 2, 0), (0, 0, 2)),     # left wall, faces +x
    )
    return ProbeScene(
        quads=quads,
        materials=(floor, material, material),
        emitter=Quad((-0.4, 1.99, -0.4), (0.8, 0, 0), (0, 0, 0.8)),
        emitter_spectrum=emitter_spectrum,
        camera=Camera((1.5, 1.2, 1.5), (-0.6, 0.6, -0.6), 50.0,
                      width, height),
        bounces=bounces,
        directions=directions,
        light_samples=light_samples)


def _emitter_spectrum(source: str,
                      grid: WavelengthGrid,
                      base_dir: Optional[pathlib.Path]) -> Spectrum:
    if source in ILLUMINANT_NAMES:
        return illuminant(source, grid).spectrum

    path = pathlib.Path(source)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    spectrum = read_spectrum(path, grid)
    if not spectrum.is_non_negative():
        raise SceneError(f"Emitter spectrum {path} has negative values")
    return spectrum
