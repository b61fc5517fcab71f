import numpy as np
import pytest

from fluor.transport.exceptions import SceneError
from fluor.transport.geometry import (
    Camera, Quad, cosine_directions, intersect, orthonormal_basis,
    stratified_points)

FLOOR = Quad((-1, 0, -1), (0, 0, 2), (2, 0, 0))


def test_quad():
    assert np.allclose(FLOOR.normal, [0, 1, 0])
    assert FLOOR.area == pytest.approx(4.0)
    points = FLOOR.points(np.array([0.0, 1.0]), np.array([0.0, 0.5]))
    assert np.allclose(points, [[-1, 0, -1], [0, 0, 1]])


def test_quad_validation():
    with pytest.raises(SceneError):
        Quad((0, 0, 0), (1, 0, 0), (1, 1, 0))
    with pytest.raises(SceneError):
        Quad((0, 0, 0), (0, 0, 0), (0, 1, 0))
    with pytest.raises(SceneError):
        Quad((0, 0), (1, 0, 0), (0, 1, 0))


def test_intersect():
    wall = Quad((-1, 0, -1), (2, 0, 0), (0, 2, 0))
    origins = np.array([[0.0, 1.0, 0.0], [0.0, 1.0, 0.0], [5.0, 1.0, 5.0]])
    directions = np.array([[0.0, -1.0, 0.0], [0.0, 0.0, -1.0],
                           [0.0, -1.0, 0.0]])

    t, index = intersect([FLOOR, wall], origins, directions)

    assert t[0] == pytest.approx(1.0)
    assert index[0] == 0
    assert t[1] == pytest.approx(1.0)
    assert index[1] == 1
    assert index[2] == -1
    assert np.isinf(t[2])


def test_intersect_with_limit():
    origins = np.array([[0.0, 1.0, 0.0], [0.0, 1.0, 0.0]])
    directions = np.array([[0.0, -1.0, 0.0], [0.0, -1.0, 0.0]])
    t, index = intersect([FLOOR], origins, directions,
                         t_max=np.array([0.5, 2.0]))
    assert index.tolist() == [-1, 0]
    assert np.isinf(t[0])


def test_orthonormal_basis():
    rng = np.random.default_rng(41)
    normals = rng.normal(size=(100, 3))
    normals /= np.linalg.norm(normals, axis=1)[:, None]
    normals[0] = [0, 0, -1]

    tangent, bitangent = orthonormal_basis(normals)

    for a, b in ((tangent, bitangent), (tangent, normals),
                 (bitangent, normals)):
        assert np.allclose(np.sum(a * b, axis=1), 0.0, atol=1e-12)
    assert np.allclose(np.linalg.norm(tangent, axis=1), 1.0)
    assert np.allclose(np.linalg.norm(bitangent, axis=1), 1.0)


def test_stratified_points():
    rotation = np.array([[0.0, 0.0], [0.3, 0.9]])
    points = stratified_points(4, rotation)
    assert points.shape == (2, 4, 2)
    assert np.all((points >= 0) & (points < 1))
    # One point per stratum of the first coordinate
    strata = np.floor(points[0, :, 0] * 4)
    assert sorted(strata.tolist()) == [0, 1, 2, 3]


def test_cosine_directions():
    normals = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0]])
    samples = stratified_points(16, np.array([[0.1, 0.2], [0.7, 0.4]]))

    directions = cosine_directions(normals, samples)

    assert directions.shape == (2, 16, 3)
    assert np.allclose(np.linalg.norm(directions, axis=2), 1.0)
    assert np.all(np.einsum("mnk,mk->mn", directions, normals) >= 0)


def test_camera_primary_rays():
    camera = Camera((0, 1, 3), (0, 1, 0), 60.0, 3, 3)
    origins, directions = camera.primary_rays(np.arange(9))

    assert camera.pixel_count == 9
    assert np.allclose(origins, [0, 1, 3])
    assert np.allclose(directions[4], [0, 0, -1])
    # Row-major from the top left
    assert directions[0, 1] > 0
    assert directions[0, 0] < 0
    assert directions[8, 1] < 0


def test_camera_validation():
    with pytest.raises(SceneError):
        Camera((0, 1, 0), (0, 0, 0), 60.0, 8, 8)
    with pytest.raises(SceneError):
        Camera((0, 1, 3), (0, 1, 0), 180.0, 8, 8)
    with pytest.raises(SceneError):
        Camera((0, 1, 3), (0, 1, 0), 60.0, 0, 8)
