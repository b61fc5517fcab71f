import numpy as np
import pytest

from fluor.bases.basis_set import (
    BasisSet, SEVEN_TRANSFER, Space, XYZU_TRANSFER)
from fluor.bases.builders import (
    BASIS_NAMES, build_basis, build_seven_band, build_xyzu, load_cmf_xyz)
from fluor.bases.exceptions import BasisError
from fluor.reduction import ColorVector, downsample, upsample
from fluor.spectral.grid import WavelengthGrid
from fluor.spectral.spectrum import Spectrum


@pytest.mark.parametrize("name", BASIS_NAMES)
def test_dual_identity(name):
    basis = build_basis(name, WavelengthGrid.canonical())
    assert basis.dual_residual() < 1e-10


@pytest.mark.parametrize("name", BASIS_NAMES)
def test_down_up_identity(name):
    basis = build_basis(name, WavelengthGrid.canonical())
    rng = np.random.default_rng(11)
    for _ in range(100):
        c = ColorVector(rng.normal(size=basis.size), basis.space)
        back = downsample(upsample(c, basis), basis)
        assert np.max(np.abs(back.values - c.values)) < 1e-10


def test_cmf_basis():
    grid = WavelengthGrid.canonical()
    basis = load_cmf_xyz(grid)
    assert basis.size == 3
    assert basis.labels == ("x", "y", "z")
    assert basis.space is Space.XYZ
    # No sensitivity below the tabulated range
    assert np.all(basis.S[grid.wavelengths < 390] == 0.0)
    assert 550 < grid.wavelengths[np.argmax(basis.column("y").values)] < 560


def test_xyzu_basis():
    basis = build_xyzu(WavelengthGrid.canonical())
    assert basis.size == 4
    assert basis.labels == ("x", "y", "z", "u")
    assert np.array_equal(basis.xyz_transfer, XYZU_TRANSFER)
    assert basis.column("u").value_at(300) == pytest.approx(1.0)


def test_seven_band_splits_add_up():
    grid = WavelengthGrid.canonical()
    seven = build_seven_band(grid)
    xyzu = build_xyzu(grid)
    assert np.allclose(seven.S @ SEVEN_TRANSFER.T, xyzu.S, atol=1e-15)


def test_seven_band_consistency():
    grid = WavelengthGrid.canonical()
    seven = build_seven_band(grid)
    xyzu = build_xyzu(grid)
    rng = np.random.default_rng(13)
    for _ in range(50):
        f = Spectrum(grid, rng.random(grid.count))
        via_seven = seven.transfer @ downsample(f, seven).values
        direct = downsample(f, xyzu).values
        assert np.allclose(via_seven, direct, rtol=1e-9, atol=0)


def test_xyz_transfer_shapes():
    grid = WavelengthGrid.canonical()
    assert build_basis("xyz", grid).xyz_transfer.shape == (3, 3)
    assert build_basis("xyzu", grid).xyz_transfer.shape == (3, 4)
    assert build_basis("seven", grid).xyz_transfer.shape == (3, 7)


def test_custom_uv_knots():
    grid = WavelengthGrid.canonical()
    knots = (300, 300, 300, 700, 750, 800, 800, 800)
    basis = build_basis("xyzu", grid, knots)
    assert basis.column("u").value_at(400) == pytest.approx((300 / 400) ** 2)


def test_unknown_basis():
    with pytest.raises(BasisError):
        build_basis("rgb", WavelengthGrid.canonical())


def test_basis_validation():
    grid = WavelengthGrid(400, 430, 10)
    with pytest.raises(BasisError):
        BasisSet("bad", grid, np.eye(3), ("a", "b", "c"), np.eye(3),
                 Space.XYZ)
    with pytest.raises(BasisError):
        BasisSet("bad", grid, np.eye(4)[:, :2], ("a",), np.eye(2),
                 Space.XYZ)
    with pytest.raises(BasisError):
        BasisSet("bad", grid, np.eye(4)[:, :2], ("a", "b"), np.eye(3),
                 Space.XYZ)


def test_column_lookup():
    basis = load_cmf_xyz(WavelengthGrid.canonical())
    with pytest.raises(BasisError):
        basis.column("u")
