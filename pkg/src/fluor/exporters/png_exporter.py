import io
import logging
import pathlib
from typing import Dict, Optional

import atomicwrites
import numpy as np
from PIL import Image
from PIL.PngImagePlugin import PngInfo

from ..colorimetry import xyz_to_rgb8
from .base_exporter import BaseExporter
from .exceptions import ExportError

logger = logging.getLogger(__name__)


class PNGExporter(BaseExporter):
    """
    Writes an 8-bit sRGB PNG, with the metadata as text chunks.

    Accepts (H, W, 3) XYZ values, displayed after division by ``exposure``
    and clamping, or an (H, W, 3) uint8 array written as is.
    """
    def __init__(self, exposure: float = 1.0):
        if not exposure > 0:
            raise ExportError(f"Exposure must be positive, got {exposure}")
        self.exposure = exposure

    def export(self,
               data: np.ndarray,
               path: pathlib.Path,
               metadata: Optional[Dict[str, str]] = None):
        data = np.asarray(data)
        if data.ndim != 3 or data.shape[2] != 3:
            raise ExportError(
                f"Expected an (H, W, 3) image, got shape {data.shape}")

        pixels = data if data.dtype == np.uint8 \
            else xyz_to_rgb8(data / self.exposure)

        info = PngInfo()
        for key, value in (metadata or {}).items():
            info.add_text(key, str(value))

        try:
            buffer = io.BytesIO()
            Image.fromarray(pixels, mode="RGB").save(
                buffer, format="PNG", pnginfo=info)
            with atomicwrites.atomic_write(
                    path, mode="wb", overwrite=True) as f:
                f.write(buffer.getvalue())
        except Exception as e:
            logger.exception(f"Unable to export png: {e}")
            raise ExportError(f"{e}")
