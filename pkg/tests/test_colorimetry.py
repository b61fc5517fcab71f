import colour
import numpy as np
import pytest

from fluor.colorimetry import (
    ILLUMINANT_NAMES, STANDARD_ILLUMINANTS, ColorimetryError, Illuminant,
    delta_e_2000, delta_e_2000_lab, illuminant, xyz_to_display,
    xyz_to_linear_srgb, xyz_to_rgb8, xyz_to_srgb)
from fluor.spectral.grid import WavelengthGrid
from fluor.spectral.spectrum import Spectrum

GRID = WavelengthGrid.canonical()

# Published CIEDE2000 verification pairs: Lab 1, Lab 2, expected ΔE
VERIFICATION_PAIRS = [
    ((50.0000, 2.6772, -79.7751), (50.0000, 0.0000, -82.7485), 2.0425),
    ((50.0000, 3.1571, -77.2803), (50.0000, 0.0000, -82.7485), 2.8615),
    ((50.0000, 2.8361, -74.0200), (50.0000, 0.0000, -82.7485), 3.4412),
    ((50.0000, -1.3802, -84.2814), (50.0000, 0.0000, -82.7485), 1.0000),
    ((50.0000, -1.1848, -84.8006), (50.0000, 0.0000, -82.7485), 1.0000),
    ((50.0000, -0.9009, -85.5211), (50.0000, 0.0000, -82.7485), 1.0000),
    ((50.0000, 0.0000, 0.0000), (50.0000, -1.0000, 2.0000), 2.3669),
    ((50.0000, -1.0000, 2.0000), (50.0000, 0.0000, 0.0000), 2.3669),
    ((50.0000, 2.4900, -0.0010), (50.0000, -2.4900, 0.0009), 7.1792),
    ((50.0000, 2.4900, -0.0010), (50.0000, -2.4900, 0.0010), 7.1792),
    ((50.0000, 2.4900, -0.0010), (50.0000, -2.4900, 0.0011), 7.2195),
    ((50.0000, 2.4900, -0.0010), (50.0000, -2.4900, 0.0012), 7.2195),
    ((50.0000, -0.0010, 2.4900), (50.0000, 0.0009, -2.4900), 4.8045),
    ((50.0000, -0.0010, 2.4900), (50.0000, 0.0010, -2.4900), 4.8045),
    ((50.0000, -0.0010, 2.4900), (50.0000, 0.0011, -2.4900), 4.7461),
    ((50.0000, 2.5000, 0.0000), (50.0000, 0.0000, -2.5000), 4.3065),
    ((50.0000, 2.5000, 0.0000), (73.0000, 25.0000, -18.0000), 27.1492),
    ((50.0000, 2.5000, 0.0000), (61.0000, -5.0000, 29.0000), 22.8977),
    ((50.0000, 2.5000, 0.0000), (56.0000, -27.0000, -3.0000), 31.9030),
    ((50.0000, 2.5000, 0.0000), (58.0000, 24.0000, 15.0000), 19.4535),
    ((50.0000, 2.5000, 0.0000), (50.0000, 3.1736, 0.5854), 1.0000),
    ((50.0000, 2.5000, 0.0000), (50.0000, 3.2972, 0.0000), 1.0000),
    ((50.0000, 2.5000, 0.0000), (50.0000, 1.8634, 0.5757), 1.0000),
    ((50.0000, 2.5000, 0.0000), (50.0000, 3.2592, 0.3350), 1.0000),
    ((60.2574, -34.0099, 36.2677), (60.4626, -34.1751, 39.4387), 1.2644),
    ((63.0109, -31.0961, -5.8663), (62.8187, -29.7946, -4.0864), 1.2630),
    ((61.2901, 3.7196, -5.3901), (61.4292, 2.2480, -4.9620), 1.8731),
    ((35.0831, -44.1164, 3.7933), (35.0232, -40.0716, 1.5901), 1.8645),
    ((22.7233, 20.0904, -46.6940), (23.0331, 14.9730, -42.5619), 2.0373),
    ((36.4612, 47.8580, 18.3852), (36.2715, 50.5065, 21.2231), 1.4146),
    ((90.8027, -2.0831, 1.4410), (91.1528, -1.6435, 0.0447), 1.4441),
    ((90.9257, -0.5406, -0.9208), (88.6381, -0.8985, -0.7239), 1.5381),
    ((6.7747, -0.2908, -2.4247), (5.8714, -0.0985, -2.2286), 0.6377),
    ((2.0776, 0.0795, -1.1350), (0.9033, -0.0636, -0.5514), 0.9082),
]


@pytest.mark.parametrize("lab1, lab2, expected", VERIFICATION_PAIRS)
def test_delta_e_2000_verification_pairs(lab1, lab2, expected):
    assert float(delta_e_2000_lab(lab1, lab2)) == \
        pytest.approx(expected, abs=1e-4)


def test_delta_e_2000_properties():
    rng = np.random.default_rng(37)
    white = np.array([95.047, 100.0, 108.883])
    for _ in range(20):
        c1, c2 = rng.random(3) * 80, rng.random(3) * 80
        assert delta_e_2000(c1, c1, white) == 0.0
        assert delta_e_2000(c1, c2, white) == \
            pytest.approx(delta_e_2000(c2, c1, white), abs=1e-12)
        assert delta_e_2000(c1, c2, white) == \
            pytest.approx(delta_e_2000(3 * c1, 3 * c2, 3 * white),
                          abs=1e-9)


def test_delta_e_2000_needs_luminous_white():
    with pytest.raises(ColorimetryError):
        delta_e_2000([1, 1, 1], [1, 2, 1], [1, 0, 1])


def test_xyz_to_srgb():
    assert np.array_equal(xyz_to_srgb(np.zeros(3)), np.zeros(3))

    d65 = colour.xy_to_XYZ(
        colour.CCS_ILLUMINANTS["CIE 1931 2 Degree Standard Observer"]["D65"])
    assert np.allclose(xyz_to_srgb(d65), 1.0, atol=1e-3)


def test_linear_srgb_is_linear():
    a = np.array([0.2, 0.3, 0.1])
    b = np.array([0.5, 0.1, 0.7])
    assert np.allclose(xyz_to_linear_srgb(2 * a + b),
                       2 * xyz_to_linear_srgb(a) + xyz_to_linear_srgb(b))


def test_display_clamps():
    image = np.array([[[0.0, 0.0, 0.0], [5.0, 5.0, 5.0], [0.0, 1.0, 0.0]]])
    display = xyz_to_display(image)
    assert np.all((display >= 0) & (display <= 1))

    pixels = xyz_to_rgb8(image)
    assert pixels.dtype == np.uint8
    assert pixels.shape == image.shape
    assert np.array_equal(pixels[0, 0], [0, 0, 0])
    assert np.array_equal(pixels[0, 1], [255, 255, 255])


def test_flat_and_gaussian_illuminants():
    assert np.all(illuminant("E", GRID).spectrum.values == 1.0)

    gauss = illuminant("Gauss350", GRID).spectrum
    assert gauss.value_at(350) == 1.0
    assert gauss.value_at(400) == pytest.approx(np.exp(-0.5))


@pytest.mark.parametrize(
    "name", [name for name in STANDARD_ILLUMINANTS if name != "E"])
def test_standard_illuminants(name):
    light = illuminant(name, GRID)
    assert light.name == name
    assert light.spectrum.grid == GRID
    assert light.spectrum.is_non_negative()
    assert light.spectrum.value_at(560) == pytest.approx(100.0)


def test_d65_has_uv_tail():
    light = illuminant("D65", GRID)
    assert light.has_uv
    assert light.spectrum.value_at(350) > 0


def test_has_uv():
    visible = Illuminant(
        "visible", Spectrum(GRID, (GRID.wavelengths >= 400).astype(float)))
    assert not visible.has_uv
    assert illuminant("Gauss350", GRID).has_uv


def test_unknown_illuminant():
    assert "D50" not in ILLUMINANT_NAMES
    with pytest.raises(ColorimetryError):
        illuminant("D50", GRID)
