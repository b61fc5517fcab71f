"""
Integrators over the deterministic path trees of a probe scene.

Each vertex reflects ``R_m (g c_light + Σ children / n)``: g is the
next-event geometry term, the children are the radiances found along the
``n`` continuation rays. The forward integrator evaluates this from the
deepest vertices up to the camera with colour vectors. The adjoint
integrator walks from the camera down, accumulating throughput matrices
``M ← M R_m / n`` and adding ``M R_m g c_light`` at every vertex. The same
forward code with dense Donaldson matrices and the emitter spectrum gives
the spectral reference.
"""
import dataclasses
import logging
from typing import Callable, List, Optional

import numpy as np

from ..bases.basis_set import BasisSet, Space, XYZU_TRANSFER
from ..reduction import (
    DEFAULT_NAIVE_NORM, Method, NaiveNorm, downsample, reduce, reduce_7_to_4)
from .exceptions import TransportError
from .paths import PathTree, build_tree
from .scene import ProbeScene

logger = logging.getLogger(__name__)

DEFAULT_TILE_SIZE = 256


@dataclasses.dataclass(frozen=True, eq=False)
class ColorImage:
    """(height, width, K) coefficients in a colour space"""
    values: np.ndarray
    space: Space

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]

    def to_xyz(self, basis: Optional[BasisSet] = None) -> np.ndarray:
        """
        Raises:
            TransportError if the image cannot be brought to XYZ with the
            given basis.
        """
        if self.space is Space.XYZ:
            return self.values
        if self.space is Space.XYZU:
            return self.values @ XYZU_TRANSFER.T
        if basis is None or basis.space is not self.space:
            raise TransportError(
                f"A {self.space} basis is needed to bring the image to XYZ")
        return self.values @ basis.xyz_transfer.T


def reduced_operators(scene: ProbeScene,
                      basis: BasisSet,
                      method: Method = Method.OURS,
                      norm: NaiveNorm = DEFAULT_NAIVE_NORM
                      ) -> List[np.ndarray]:
    """The reduced matrix of every quad's material"""
    cache = {}
    operators = []
    for material in scene.materials:
        if material.name not in cache:
            cache[material.name] = reduce(
                material.P, basis, method, norm).entries
        operators.append(cache[material.name])
    return operators


def forward_tile(tree: PathTree,
                 operators: List[np.ndarray],
                 light: np.ndarray,
                 camera_operators: Optional[List[np.ndarray]] = None,
                 emission: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Evaluates a tile from the deepest vertices up to the camera.

    Args:
        tree: the tile's path trees
        operators: reduced or dense matrix of each material
        light: the emitter's light vector
        camera_operators: matrices used instead of ``operators`` at the
                          vertices seen by the camera
        emission: what the camera sees when looking at the emitter,
                  ``light`` by default
    """
    emission = light if emission is None else emission
    result = np.zeros((len(tree.pixels), len(emission)))
    children = None
    for depth in reversed(range(len(tree.levels))):
        level = tree.levels[depth]
        incoming = level.geometry[:, None] * light[None, :]
        if children is not None:
            incoming = incoming + children / tree.directions

        if depth == 0:
            result[level.pixel] = _apply(
                camera_operators or operators, level.material, incoming)
        else:
            outgoing = _apply(operators, level.material, incoming)
            children = np.zeros((len(tree.levels[depth - 1]), len(light)))
            np.add.at(children, level.parent, outgoing)

    result[tree.sees_emitter] += emission
    return result


def adjoint_tile(tree: PathTree,
                 operators: List[np.ndarray],
                 light: np.ndarray,
                 camera_operators: Optional[List[np.ndarray]] = None,
                 emission: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Evaluates a tile from the camera down with throughput matrices. Takes
    the same arguments as forward_tile.
    """
    emission = light if emission is None else emission
    result = np.zeros((len(tree.pixels), len(emission)))

    throughput = None
    for depth, level in enumerate(tree.levels):
        if depth == 0:
            # Throughput starts as the identity at the sensor
            first = np.stack(camera_operators or operators)
            throughput = first[level.material]
        else:
            throughput = _left_apply(
                throughput[level.parent] / tree.directions,
                operators, level.material)

        contribution = (throughput @ light) * level.geometry[:, None]
        np.add.at(result, level.pixel, contribution)

    result[tree.sees_emitter] += emission
    return result


def light_trace(scene: ProbeScene,
                basis: BasisSet,
                bounces: Optional[int] = None,
                method: Method = Method.OURS,
                norm: NaiveNorm = DEFAULT_NAIVE_NORM,
                seed: int = 0,
                connect: bool = False,
                tile_size: int = DEFAULT_TILE_SIZE) -> ColorImage:
    """
    Renders reduced light vectors from the emitter to the camera.

    With connect, a seven band light vector reaches the camera through the
    4×7 connection matrix T R₇ of the last surface, so the image holds XYZU
    coefficients.
    """
    setup = _ReducedSetup.build(scene, basis, method, norm, connect)
    return _render(
        scene, bounces, seed, tile_size, setup.space,
        lambda tree: forward_tile(tree, setup.operators, setup.light,
                                  setup.camera_operators, setup.emission))


def adjoint_trace(scene: ProbeScene,
                  basis: BasisSet,
                  bounces: Optional[int] = None,
                  method: Method = Method.OURS,
                  norm: NaiveNorm = DEFAULT_NAIVE_NORM,
                  seed: int = 0,
                  connect: bool = False,
                  tile_size: int = DEFAULT_TILE_SIZE) -> ColorImage:
    """Renders the same estimator as light_trace, camera first"""
    setup = _ReducedSetup.build(scene, basis, method, norm, connect)
    return _render(
        scene, bounces, seed, tile_size, setup.space,
        lambda tree: adjoint_tile(tree, setup.operators, setup.light,
                                  setup.camera_operators, setup.emission))


def render_reference(scene: ProbeScene,
                     observer: BasisSet,
                     bounces: Optional[int] = None,
                     seed: int = 0,
                     tile_size: int = DEFAULT_TILE_SIZE) -> ColorImage:
    """
    Dense spectral rendering with the full Donaldson matrices, projected on
    the observer's XYZ functions at the camera.
    """
    if observer.space is not Space.XYZ:
        raise TransportError("The reference is projected on an XYZ basis")
    if observer.grid != scene.grid:
        raise TransportError(
            f"Observer on {observer.grid} does not match scene grid "
            f"{scene.grid}")

    operators = [material.P.entries for material in scene.materials]
    light = np.asarray(scene.emitter_spectrum.values)
    return _render(
        scene, bounces, seed, tile_size, Space.XYZ,
        lambda tree: forward_tile(tree, operators, light) @ observer.weighted)


def connection_operators(scene: ProbeScene,
                         basis: BasisSet,
                         method: Method = Method.OURS,
                         norm: NaiveNorm = DEFAULT_NAIVE_NORM
                         ) -> List[np.ndarray]:
    """The 4×7 camera connection matrix T R₇ of every quad's material"""
    if basis.space is not Space.SEVEN:
        raise TransportError("Connection matrices need a seven band basis")
    return [reduce_7_to_4(reduce(material.P, basis, method, norm),
                          basis.transfer).entries
            for material in scene.materials]


@dataclasses.dataclass
class _ReducedSetup:
    light: np.ndarray
    operators: List[np.ndarray]
    space: Space
    camera_operators: Optional[List[np.ndarray]] = None
    emission: Optional[np.ndarray] = None

    @classmethod
    def build(cls,
              scene: ProbeScene,
              basis: BasisSet,
              method: Method,
              norm: NaiveNorm,
              connect: bool):
        light = downsample(scene.emitter_spectrum, basis).values
        operators = reduced_operators(scene, basis, method, norm)
        if not connect:
            return cls(light, operators, basis.space)

        return cls(light, operators, Space.XYZU,
                   camera_operators=connection_operators(
                       scene, basis, method, norm),
                   emission=basis.transfer @ light)


def _render(scene: ProbeScene,
            bounces: Optional[int],
            seed: int,
            tile_size: int,
            space: Space,
            evaluate: Callable[[PathTree], np.ndarray]) -> ColorImage:
    bounces = scene.bounces if bounces is None else bounces
    if bounces < 1:
        raise TransportError(f"At least one bounce is needed, got {bounces}")

    camera = scene.camera
    image = None
    for start in range(0, camera.pixel_count, tile_size):
        pixels = np.arange(start, min(start + tile_size, camera.pixel_count))
        values = evaluate(build_tree(scene, pixels, seed, bounces))
        if image is None:
            image = np.zeros((camera.pixel_count, values.shape[1]))
        image[pixels] = values

    logger.info(f"Rendered {camera.width}x{camera.height} {space} image")
    return ColorImage(image.reshape(camera.height, camera.width, -1), space)


def _apply(operators: List[np.ndarray],
           material: np.ndarray,
           vectors: np.ndarray) -> np.ndarray:
    """Row-wise operators[material] @ vector, one product per material"""
    result = np.zeros((len(vectors), operators[0].shape[0]))
    for index in np.unique(material):
        mask = material == index
        result[mask] = vectors[mask] @ operators[index].T
    return result


def _left_apply(matrices: np.ndarray,
                operators: List[np.ndarray],
                material: np.ndarray) -> np.ndarray:
    """Batched matrices[v] @ operators[material[v]]"""
    result = np.zeros(matrices.shape[:2] + (operators[0].shape[1], ))
    for index in np.unique(material):
        mask = material == index
        result[mask] = matrices[mask] @ operators[index]
    return result
