import numpy as np
import pytest

from fluor.spectral.exceptions import (
    DisjointGridsError, GridMismatchError, OffGridError, SpectralError)
from fluor.spectral.grid import WavelengthGrid
from fluor.spectral.spectrum import (
    Spectrum, constant_spectrum, delta_spectrum, gaussian_spectrum,
    quadrature_integrate, resample, tabulated_spectrum)


def test_spectrum_validation():
    grid = WavelengthGrid(400, 420, 10)
    with pytest.raises(SpectralError):
        Spectrum(grid, [1.0, 2.0])

    with pytest.raises(SpectralError):
        Spectrum(grid, [1.0, np.nan, 2.0])

    spectrum = Spectrum(grid, [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        spectrum.values[0] = 4.0


def test_arithmetic():
    grid = WavelengthGrid(400, 420, 10)
    a = Spectrum(grid, [1.0, 2.0, 3.0])
    b = constant_spectrum(2.0, grid)

    assert np.array_equal((a + b).values, [3.0, 4.0, 5.0])
    assert np.array_equal((a - b).values, [-1.0, 0.0, 1.0])
    assert np.array_equal((a * b).values, [2.0, 4.0, 6.0])
    assert np.array_equal((0.5 * a).values, [0.5, 1.0, 1.5])
    assert not (a - b).is_non_negative()

    with pytest.raises(GridMismatchError):
        a + constant_spectrum(1.0, WavelengthGrid(400, 430, 15))


def test_resample_constant():
    source = constant_spectrum(1.0, WavelengthGrid.canonical())
    target = WavelengthGrid(300, 800, 5)
    resampled = resample(source, target)
    assert resampled.grid == target
    assert np.allclose(resampled.values, 1.0)


def test_resample_zero_extension():
    source = constant_spectrum(1.0, WavelengthGrid(380, 780, 1))
    resampled = resample(source, WavelengthGrid.canonical())

    assert np.all(resampled.values[resampled.wavelengths < 380] == 0.0)
    assert np.all(resampled.values[resampled.wavelengths > 780] == 0.0)
    assert np.all(resampled.values[
        (resampled.wavelengths >= 380) & (resampled.wavelengths <= 780)
    ] == 1.0)


def test_resample_gaussian_round_trip():
    fine = WavelengthGrid.canonical()
    coarse = WavelengthGrid(300, 800, 2)
    original = gaussian_spectrum(450, 50, fine)

    back = resample(resample(original, coarse), fine)

    assert np.max(np.abs(back.values - original.values)) < 1e-3


def test_resample_same_grid():
    spectrum = gaussian_spectrum(450, 50, WavelengthGrid.canonical())
    assert resample(spectrum, spectrum.grid) is spectrum


def test_resample_disjoint():
    source = constant_spectrum(1.0, WavelengthGrid(300, 400, 1))
    with pytest.raises(DisjointGridsError, match="disjoint grids"):
        resample(source, WavelengthGrid(500, 600, 1))


def test_tabulated_spectrum_non_uniform():
    grid = WavelengthGrid(400, 440, 10)
    spectrum = tabulated_spectrum([405, 415, 440], [1.0, 3.0, 3.0], grid)
    assert np.allclose(spectrum.values, [0.0, 2.0, 3.0, 3.0, 3.0])


def test_gaussian_spectrum():
    grid = WavelengthGrid.canonical()
    gaussian = gaussian_spectrum(350, 50, grid)
    assert gaussian.value_at(350) == 1.0
    assert gaussian.value_at(300) == pytest.approx(np.exp(-0.5))
    assert gaussian.value_at(400) == pytest.approx(0.6065, abs=1e-4)

    shifted = gaussian_spectrum(450, 50, grid)
    rising = shifted.values[shifted.wavelengths <= 450]
    falling = shifted.values[shifted.wavelengths >= 450]
    assert np.all(np.diff(rising) > 0)
    assert np.all(np.diff(falling) < 0)

    with pytest.raises(SpectralError):
        gaussian_spectrum(350, 0, grid)


@pytest.mark.parametrize("wavelength", [300, 301, 555, 799, 800])
def test_delta_spectrum(wavelength):
    grid = WavelengthGrid.canonical()
    delta = delta_spectrum(wavelength, grid)
    assert quadrature_integrate(delta) == pytest.approx(1.0, abs=1e-12)
    assert np.count_nonzero(delta.values) == 1


def test_delta_spectrum_sifts():
    grid = WavelengthGrid(300, 800, 5)
    f = gaussian_spectrum(500, 40, grid)
    delta = delta_spectrum(520, grid)
    assert quadrature_integrate(f * delta) == \
        pytest.approx(f.value_at(520), abs=1e-12)

    with pytest.raises(OffGridError):
        delta_spectrum(522, grid)


def test_quadrature_integrate():
    grid = WavelengthGrid.canonical()
    assert quadrature_integrate(constant_spectrum(1.0, grid)) == \
        pytest.approx(500.0)

    # Tails beyond the grid are below 1e-5 of the full integral
    gaussian = gaussian_spectrum(550, 50, grid)
    assert quadrature_integrate(gaussian) == \
        pytest.approx(50 * np.sqrt(2 * np.pi), rel=1e-5)


def test_quadrature_is_monotone():
    grid = WavelengthGrid(300, 800, 5)
    rng = np.random.default_rng(13)
    for _ in range(20):
        f = Spectrum(grid, rng.normal(size=grid.count))
        g = Spectrum(grid, f.values + rng.random(grid.count))
        assert quadrature_integrate(f) <= quadrature_integrate(g)

    f = gaussian_spectrum(500, 40, grid)
    assert quadrature_integrate(f) < quadrature_integrate(f * 1.5)
