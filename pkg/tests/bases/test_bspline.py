import numpy as np
import pytest

from fluor.bases.bspline import (
    DEFAULT_UV_KNOTS, build_uv_band, partition_of_unity)
from fluor.bases.exceptions import BasisError
from fluor.spectral.grid import WavelengthGrid


def test_partition_of_unity():
    grid = WavelengthGrid.canonical()
    partition = partition_of_unity(grid)

    assert partition.shape == (501, len(DEFAULT_UV_KNOTS) - 3)
    assert np.all(partition >= 0)
    assert np.max(np.abs(partition.sum(axis=1) - 1.0)) < 1e-12


def test_uv_band():
    grid = WavelengthGrid.canonical()
    band = build_uv_band(grid)

    assert band.value_at(300) == pytest.approx(1.0)
    assert band.value_at(400) == pytest.approx((245 / 345) ** 2)
    assert np.all(band.values[band.wavelengths < 400] > 0.5)
    assert np.all(np.diff(band.values) <= 1e-12)
    assert np.all(band.values[band.wavelengths >= 645] == 0.0)


def test_uv_band_rejects_early_drop():
    grid = WavelengthGrid.canonical()
    with pytest.raises(BasisError):
        build_uv_band(grid, (300, 300, 300, 350, 500, 800, 800, 800))


@pytest.mark.parametrize("knots", [
    (300, 300, 645, 800, 800),
    (300, 300, 300, 700, 645, 800, 800, 800),
    (300, 310, 320, 645, 720, 800, 800, 800),
])
def test_invalid_knots(knots):
    with pytest.raises(BasisError):
        partition_of_unity(WavelengthGrid.canonical(), knots)
