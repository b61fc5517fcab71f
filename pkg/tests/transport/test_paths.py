import numpy as np
import pytest

from fluor.materials import GREY, diffuse_material, identity_material
from fluor.spectral.grid import WavelengthGrid
from fluor.spectral.spectrum import constant_spectrum
from fluor.transport.geometry import RAY_OFFSET, Camera, Quad, intersect
from fluor.transport.paths import build_tree, pixel_rotations, tree_size
from fluor.transport.scene import ProbeScene, default_probe_scene


@pytest.fixture(scope="module")
def scene():
    grid = WavelengthGrid(300, 800, 10)
    return default_probe_scene(
        grid, identity_material(grid),
        diffuse_material(GREY, constant_spectrum(0.5, grid)),
        width=12, height=10, bounces=3, directions=3, light_samples=2)


def test_tree_size():
    assert tree_size(1, 4) == 1
    assert tree_size(3, 4) == 21
    assert tree_size(0, 4) == 0


def test_pixel_rotations_ignore_tiling():
    together = pixel_rotations(7, np.array([5, 6]), 3, 4)
    alone = pixel_rotations(7, np.array([6]), 3, 4)
    assert together.shape == (2, 21, 4)
    assert np.array_equal(together[1], alone[0])
    assert not np.array_equal(
        together[0], pixel_rotations(8, np.array([5]), 3, 4)[0])


def test_build_tree_structure(scene):
    pixels = np.arange(scene.camera.pixel_count)
    tree = build_tree(scene, pixels, seed=0, bounces=3)

    assert 1 <= len(tree.levels) <= 3
    first = tree.levels[0]
    assert np.all(first.parent == -1)
    assert len(first) + np.count_nonzero(tree.sees_emitter) <= len(pixels)

    for depth in range(1, len(tree.levels)):
        level = tree.levels[depth]
        previous = tree.levels[depth - 1]
        assert np.all((level.parent >= 0) & (level.parent < len(previous)))
        assert np.array_equal(level.pixel, previous.pixel[level.parent])
        assert np.all(level.slot < scene.directions ** depth)

    for level in tree.levels:
        assert np.all(level.geometry >= 0)
        assert np.all((level.material >= 0)
                      & (level.material < len(scene.quads)))
        assert len(level.geometry) == len(level) == len(level.points)

    assert tree.vertex_count <= len(pixels) * tree_size(3, 3)


def test_build_tree_is_deterministic(scene):
    pixels = np.arange(scene.camera.pixel_count)
    a = build_tree(scene, pixels, seed=3, bounces=2)
    b = build_tree(scene, pixels, seed=3, bounces=2)
    for level_a, level_b in zip(a.levels, b.levels):
        assert np.array_equal(level_a.geometry, level_b.geometry)
        assert np.array_equal(level_a.points, level_b.points)


def test_build_tree_ignores_tiling(scene):
    pixels = np.arange(scene.camera.pixel_count)
    whole = build_tree(scene, pixels, seed=1, bounces=2)
    part = build_tree(scene, pixels[40:60], seed=1, bounces=2)

    mask = (whole.levels[0].pixel >= 40) & (whole.levels[0].pixel < 60)
    assert np.allclose(whole.levels[0].geometry[mask],
                       part.levels[0].geometry, rtol=1e-12, atol=0)
    assert np.array_equal(whole.sees_emitter[40:60], part.sees_emitter)


def test_single_bounce_has_no_continuation(scene):
    tree = build_tree(scene, np.arange(20), seed=0, bounces=1)
    assert len(tree.levels) == 1


def test_paths_stop_at_the_emitter():
    grid = WavelengthGrid(300, 800, 10)
    grey = diffuse_material(GREY, constant_spectrum(0.5, grid))
    # The emitter hangs between a floor and a ceiling, so paths from the
    # ceiling can reach its unlit back
    scene = ProbeScene(
        quads=(Quad((-2, 0, -2), (0, 0, 4), (4, 0, 0)),
               Quad((-2, 3, -2), (4, 0, 0), (0, 0, 4))),
        materials=(grey, grey),
        emitter=Quad((-0.5, 1.5, -0.5), (1, 0, 0), (0, 0, 1)),
        emitter_spectrum=constant_spectrum(1.0, grid),
        camera=Camera((3, 1.6, 3), (0, 1.4, 0), 70.0, 12, 12),
        bounces=3, directions=4, light_samples=2)

    pixels = np.arange(scene.camera.pixel_count)
    tree = build_tree(scene, pixels, seed=0, bounces=3)
    assert np.any(tree.levels[0].material == 1)

    for parent, child in zip(tree.levels, tree.levels[1:]):
        assert len(child) > 0
        starts = parent.points[child.parent] + \
            RAY_OFFSET * parent.normals[child.parent]
        segments = child.points - starts
        length = np.linalg.norm(segments, axis=1)
        _, blocker = intersect([scene.emitter], starts,
                               segments / length[:, None],
                               t_max=length * (1 - 1e-9))
        assert np.all(blocker == -1)
