import pathlib

import numpy as np
import pytest
from PIL import Image

from fluor.exporters.exceptions import ExportError
from fluor.exporters.png_exporter import PNGExporter


def test_xyz_export(tmpdir):
    path = pathlib.Path(tmpdir, "image.png")
    xyz = np.zeros((2, 3, 3))
    xyz[0, 0] = [0.9505, 1.0, 1.089]
    xyz[1, 2] = [1.901, 2.0, 2.178]

    PNGExporter(exposure=2.0).export(xyz, path, {"seed": "4"})

    with Image.open(path) as image:
        assert image.size == (3, 2)
        assert image.mode == "RGB"
        assert image.text["seed"] == "4"
        pixels = np.asarray(image)
    assert pixels[1, 2].tolist() == [255, 255, 255]
    assert pixels[0, 1].tolist() == [0, 0, 0]
    # Half of the white, once encoded
    assert 180 < pixels[0, 0, 1] < 195


def test_rgb_export(tmpdir):
    path = pathlib.Path(tmpdir, "image.png")
    pixels = np.arange(12, dtype=np.uint8).reshape(2, 2, 3)
    PNGExporter().export(pixels, path)

    with Image.open(path) as image:
        assert np.array_equal(np.asarray(image), pixels)


def test_validation(tmpdir):
    with pytest.raises(ExportError):
        PNGExporter(exposure=0.0)
    with pytest.raises(ExportError):
        PNGExporter().export(np.zeros((2, 2)), pathlib.Path(tmpdir, "a.png"))


def test_unwritable_path(tmpdir):
    path = pathlib.Path(tmpdir, "missing", "image.png")
    with pytest.raises(ExportError):
        PNGExporter().export(np.zeros((1, 1, 3)), path)
