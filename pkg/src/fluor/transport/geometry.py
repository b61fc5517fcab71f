from __future__ import annotations

import dataclasses
import math
from typing import Sequence, Tuple

import numpy as np

from .exceptions import SceneError

EPSILON = 1e-9

# Origin offset along the normal for rays leaving a surface
RAY_OFFSET = 1e-6

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclasses.dataclass(frozen=True, eq=False)
class Quad:
    """A rectangle: a corner and two orthogonal edges. Faces along u × v."""
    corner: np.ndarray
    edge_u: np.ndarray
    edge_v: np.ndarray

    def __post_init__(self):
        for name in ("corner", "edge_u", "edge_v"):
            value = np.array(getattr(self, name), dtype=float)
            if value.shape != (3, ):
                raise SceneError(f"Quad {name} must be a 3D vector")
            value.setflags(write=False)
            object.__setattr__(self, name, value)

        lengths = np.linalg.norm(self.edge_u) * np.linalg.norm(self.edge_v)
        if lengths == 0:
            raise SceneError("Quad edges must not be null")
        if abs(np.dot(self.edge_u, self.edge_v)) > 1e-9 * lengths:
            raise SceneError("Quad edges must be orthogonal")

    @property
    def normal(self) -> np.ndarray:
        n = np.cross(self.edge_u, self.edge_v)
        return n / np.linalg.norm(n)

    @property
    def area(self) -> float:
        return float(np.linalg.norm(np.cross(self.edge_u, self.edge_v)))

    def points(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Points at parametric coordinates (a, b) in [0, 1]²"""
        return (self.corner[None, :]
                + a[:, None] * self.edge_u[None, :]
                + b[:, None] * self.edge_v[None, :])


def intersect(quads: Sequence[Quad],
              origins: np.ndarray,
              directions: np.ndarray,
              t_max: np.ndarray = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nearest intersection of each ray with a set of quads, both sides.

    Returns: the distance along each ray (inf on a miss) and the index of
             the quad hit (-1 on a miss).
    """
    count = len(origins)
    nearest = np.full(count, np.inf) if t_max is None else np.array(t_max)
    index = np.full(count, -1)

    for k, quad in enumerate(quads):
        normal = quad.normal
        denom = directions @ normal
        with np.errstate(divide="ignore", invalid="ignore"):
            t = ((quad.corner - origins) @ normal) / denom
        valid = (np.abs(denom) > EPSILON) & (t > EPSILON) & (t < nearest)
        if not np.any(valid):
            continue

        local = origins + t[:, None] * directions - quad.corner
        a = (local @ quad.edge_u) / np.dot(quad.edge_u, quad.edge_u)
        b = (local @ quad.edge_v) / np.dot(quad.edge_v, quad.edge_v)
        hit = valid & (a >= 0) & (a <= 1) & (b >= 0) & (b <= 1)

        nearest = np.where(hit, t, nearest)
        index = np.where(hit, k, index)

    if t_max is not None:
        nearest = np.where(index >= 0, nearest, np.inf)
    return nearest, index


def orthonormal_basis(normals: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Branchless tangent frames around unit normals (Duff et al.)"""
    x, y, z = normals[:, 0], normals[:, 1], normals[:, 2]
    sign = np.where(z >= 0, 1.0, -1.0)
    a = -1.0 / (sign + z)
    b = x * y * a
    tangent = np.stack([1.0 + sign * x * x * a, sign * b, -sign * x], axis=1)
    bitangent = np.stack([b, sign + y * y * a, -y], axis=1)
    return tangent, bitangent


def stratified_points(count: int, rotation: np.ndarray) -> np.ndarray:
    """
    A golden ratio lattice of count points in the unit square, shifted
    modulo 1 by one rotation per row of ``rotation`` (shape (M, 2)).

    Returns: an (M, count, 2) array.
    """
    j = np.arange(count)
    lattice = np.stack([(j + 0.5) / count, (j * _GOLDEN) % 1.0], axis=1)
    return (lattice[None, :, :] + rotation[:, None, :]) % 1.0


def cosine_directions(normals: np.ndarray, samples: np.ndarray) -> np.ndarray:
    """
    Maps unit square samples of shape (M, n, 2) to cosine distributed
    directions around M normals, projecting a uniform disk sample onto the
    hemisphere.
    """
    radius = np.sqrt(samples[..., 0])
    phi = 2.0 * np.pi * samples[..., 1]
    height = np.sqrt(np.maximum(0.0, 1.0 - samples[..., 0]))

    tangent, bitangent = orthonormal_basis(normals)
    return (tangent[:, None, :] * (radius * np.cos(phi))[..., None]
            + bitangent[:, None, :] * (radius * np.sin(phi))[..., None]
            + normals[:, None, :] * height[..., None])


@dataclasses.dataclass(frozen=True, eq=False)
class Camera:
    """Pinhole camera, vertical field of view in degrees"""
    position: np.ndarray
    target: np.ndarray
    fov: float
    width: int
    height: int

    def __post_init__(self):
        for name in ("position", "target"):
            value = np.array(getattr(self, name), dtype=float)
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        if not 0 < self.fov < 180:
            raise SceneError(f"Field of view must be in (0, 180), got "
                             f"{self.fov}")
        if self.width < 1 or self.height < 1:
            raise SceneError("Image size must be positive")
        forward = self.target - self.position
        if np.linalg.norm(np.cross(forward, [0.0, 1.0, 0.0])) < EPSILON:
            raise SceneError("Camera cannot look straight up or down")

    @property
    def pixel_count(self) -> int:
        return self.width * self.height

    def primary_rays(self,
                     pixels: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Rays through the centres of the given row-major pixel indices"""
        forward = self.target - self.position
        forward = forward / np.linalg.norm(forward)
        right = np.cross(forward, [0.0, 1.0, 0.0])
        right = right / np.linalg.norm(right)
        up = np.cross(right, forward)

        rows, cols = np.divmod(pixels, self.width)
        half_height = math.tan(math.radians(self.fov) / 2)
        half_width = half_height * self.width / self.height
        x = ((cols + 0.5) / self.width * 2 - 1) * half_width
        y = (1 - (rows + 0.5) / self.height * 2) * half_height

        directions = (forward[None, :]
                      + x[:, None] * right[None, :]
                      + y[:, None] * up[None, :])
        directions /= np.linalg.norm(directions, axis=1)[:, None]
        origins = np.broadcast_to(self.position, directions.shape).copy()
        return origins, directions
