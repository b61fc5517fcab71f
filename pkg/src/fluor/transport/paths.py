"""
Deterministic path trees for the probe scene.

Every pixel shoots one ray through its centre. At every surface vertex the
light is connected by next-event estimation over stratified emitter
samples, and, until the bounce limit, ``directions`` stratified cosine
distributed rays continue the path. Sample patterns are rotated per pixel
by a generator seeded with (seed, pixel index), so a pixel's tree does not
depend on how the image is split into tiles.
"""
import dataclasses
import logging
from typing import List

import numpy as np

from .geometry import (
    RAY_OFFSET, cosine_directions, intersect, stratified_points)
from .scene import ProbeScene

logger = logging.getLogger(__name__)


@dataclasses.dataclass
class PathLevel:
    """All the vertices of one depth in a tile's path trees"""
    # Tile local pixel of each vertex
    pixel: np.ndarray
    # Index of the parent vertex in the previous level, -1 at the root
    parent: np.ndarray
    # Quad index, hence material index, of each vertex
    material: np.ndarray
    # Emitter radiance scale arriving at the vertex, divided by π
    geometry: np.ndarray
    # Position of each vertex among its pixel tree's vertices of this depth
    slot: np.ndarray
    points: np.ndarray = dataclasses.field(repr=False)
    normals: np.ndarray = dataclasses.field(repr=False)

    def __len__(self) -> int:
        return len(self.pixel)


@dataclasses.dataclass
class PathTree:
    """The path trees of a tile of pixels"""
    pixels: np.ndarray
    levels: List[PathLevel]
    # Pixels whose primary ray hits the front of the emitter
    sees_emitter: np.ndarray
    directions: int

    @property
    def vertex_count(self) -> int:
        return sum(len(level) for level in self.levels)


def tree_size(bounces: int, directions: int) -> int:
    """Maximum number of vertices of one pixel's tree"""
    return sum(directions ** depth for depth in range(bounces))


def pixel_rotations(seed: int,
                    pixels: np.ndarray,
                    bounces: int,
                    directions: int) -> np.ndarray:
    """
    Per pixel and per potential vertex, the Cranley-Patterson rotations of
    the direction and emitter patterns, shape (P, V, 4).
    """
    size = tree_size(bounces, directions)
    return np.stack([
        np.random.default_rng([seed, int(pixel)]).random((size, 4))
        for pixel in pixels
    ])


def build_tree(scene: ProbeScene,
               pixels: np.ndarray,
               seed: int,
               bounces: int) -> PathTree:
    """Traces the path trees of the given row-major pixels"""
    n = scene.directions
    rotations = pixel_rotations(seed, pixels, bounces, n)
    surfaces = list(scene.quads)
    everything = surfaces + [scene.emitter]
    emitter_index = len(surfaces)

    origins, directions = scene.camera.primary_rays(pixels)
    t, hit = intersect(everything, origins, directions)

    facing = directions @ scene.emitter.normal < 0
    sees_emitter = (hit == emitter_index) & facing

    on_surface = (hit >= 0) & (hit < emitter_index)
    local = np.nonzero(on_surface)[0]
    level = _make_level(
        scene, rotations,
        pixel=local,
        parent=np.full(len(local), -1),
        slot=np.zeros(len(local), dtype=int),
        depth=0,
        material=hit[on_surface],
        points=origins[on_surface] + t[on_surface, None]
        * directions[on_surface],
        incoming=directions[on_surface])
    levels = [level]

    for depth in range(1, bounces):
        previous = levels[-1]
        if len(previous) == 0:
            break

        offset = tree_size(depth - 1, n)
        samples = stratified_points(
            n, rotations[previous.pixel, offset + previous.slot, 0:2])
        outgoing = cosine_directions(previous.normals, samples)

        count = len(previous)
        ray_origins = np.repeat(
            previous.points + RAY_OFFSET * previous.normals, n, axis=0)
        ray_directions = outgoing.reshape(count * n, 3)
        t, hit = intersect(everything, ray_origins, ray_directions)

        # Paths end on the emitter: its front is counted by the light
        # samples and its back is black
        keep = (hit >= 0) & (hit < emitter_index)
        parent = np.repeat(np.arange(count), n)[keep]
        branch = np.tile(np.arange(n), count)[keep]
        levels.append(_make_level(
            scene, rotations,
            pixel=previous.pixel[parent],
            parent=parent,
            slot=previous.slot[parent] * n + branch,
            depth=depth,
            material=hit[keep],
            points=ray_origins[keep] + t[keep, None] * ray_directions[keep],
            incoming=ray_directions[keep]))

    tree = PathTree(pixels, levels, sees_emitter, n)
    logger.info(
        f"Traced {len(pixels)} pixels into {tree.vertex_count} vertices")
    return tree


def _make_level(scene: ProbeScene,
                rotations: np.ndarray,
                pixel: np.ndarray,
                parent: np.ndarray,
                slot: np.ndarray,
                depth: int,
                material: np.ndarray,
                points: np.ndarray,
                incoming: np.ndarray) -> PathLevel:
    normals = np.array([scene.quads[k].normal for k in material]) \
        if len(material) else np.zeros((0, 3))
    # Shade on the side the path arrives from
    flip = np.sum(normals * incoming, axis=1) > 0
    normals[flip] *= -1

    offset = tree_size(depth, scene.directions)
    light_rotation = rotations[pixel, offset + slot, 2:4] \
        if len(pixel) else np.zeros((0, 2))
    geometry = _light_geometry(scene, points, normals, light_rotation)

    return PathLevel(pixel=pixel, parent=parent, material=material,
                     geometry=geometry, slot=slot, points=points,
                     normals=normals)


def _light_geometry(scene: ProbeScene,
                    points: np.ndarray,
                    normals: np.ndarray,
                    rotation: np.ndarray) -> np.ndarray:
    """
    Next-event estimate of (1/π) ∫ cosθ_x cosθ_l / r² V dA over the emitter,
    from stratified emitter samples.
    """
    count = len(points)
    m = scene.light_samples
    if count == 0:
        return np.zeros(0)

    samples = stratified_points(m, rotation)
    emitter = scene.emitter
    targets = (emitter.corner[None, None, :]
               + samples[..., 0:1] * emitter.edge_u[None, None, :]
               + samples[..., 1:2] * emitter.edge_v[None, None, :])

    origins = points + RAY_OFFSET * normals
    to_light = targets - origins[:, None, :]
    distance = np.linalg.norm(to_light, axis=2)
    direction = to_light / distance[..., None]

    cos_x = np.maximum(0.0, np.sum(direction * normals[:, None, :], axis=2))
    cos_l = np.maximum(0.0, -(direction @ emitter.normal))
    weight = cos_x * cos_l / distance ** 2

    visible = weight > 0
    if np.any(visible):
        flat_origins = np.repeat(origins, m, axis=0)[visible.ravel()]
        flat_directions = direction.reshape(-1, 3)[visible.ravel()]
        _, blocker = intersect(
            list(scene.quads), flat_origins, flat_directions,
            t_max=distance.ravel()[visible.ravel()] * (1 - 1e-9))
        occluded = np.zeros(count * m, dtype=bool)
        occluded[np.nonzero(visible.ravel())[0]] = blocker >= 0
        weight = np.where(occluded.reshape(count, m), 0.0, weight)

    return emitter.area / (np.pi * m) * np.sum(weight, axis=1)
