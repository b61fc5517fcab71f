import numpy as np
import pytest

from fluor.spectral.exceptions import OffGridError, SpectralError
from fluor.spectral.grid import WavelengthGrid


def test_canonical_grid():
    grid = WavelengthGrid.canonical()
    assert grid.count == 501
    assert grid.wavelengths[0] == 300.0
    assert grid.wavelengths[-1] == 800.0
    assert str(grid) == "300:800:1"


def test_trapezoid_weights():
    grid = WavelengthGrid(300, 800, 5)
    assert grid.weights[0] == 2.5
    assert grid.weights[-1] == 2.5
    assert np.all(grid.weights[1:-1] == 5.0)
    assert np.sum(grid.weights) == pytest.approx(500.0)


def test_parse():
    grid = WavelengthGrid.parse("300:800:5")
    assert grid == WavelengthGrid(300, 800, 5)
    assert grid.count == 101
    assert WavelengthGrid.parse(str(grid)) == grid

    with pytest.raises(SpectralError):
        WavelengthGrid.parse("300-800")


def test_invalid_grids():
    with pytest.raises(SpectralError):
        WavelengthGrid(300, 800, 0)

    with pytest.raises(SpectralError):
        WavelengthGrid(300, 803, 5)

    with pytest.raises(SpectralError):
        WavelengthGrid(800, 300, 1)


def test_from_samples():
    grid = WavelengthGrid.from_samples(np.arange(400, 431, 10))
    assert grid == WavelengthGrid(400, 430, 10)

    with pytest.raises(SpectralError):
        WavelengthGrid.from_samples([400, 410, 430])

    with pytest.raises(SpectralError):
        WavelengthGrid.from_samples([400, 390])


def test_index():
    grid = WavelengthGrid.canonical()
    assert grid.index(300) == 0
    assert grid.index(450) == 150
    assert grid.index(800) == 500

    with pytest.raises(OffGridError):
        grid.index(450.5)

    with pytest.raises(OffGridError):
        grid.index(801)


def test_overlaps_and_halved():
    grid = WavelengthGrid(300, 800, 2)
    assert grid.overlaps(WavelengthGrid(380, 900, 1))
    assert not grid.overlaps(WavelengthGrid(810, 900, 1))
    assert grid.halved() == WavelengthGrid(300, 800, 1)
