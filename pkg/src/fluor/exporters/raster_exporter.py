import logging
import pathlib
from typing import Dict, Optional

import atomicwrites
import numpy as np

from .base_exporter import BaseExporter
from .exceptions import ExportError

logger = logging.getLogger(__name__)


class RasterExporter(BaseExporter):
    """
    Float raster text file: metadata comment lines, a ``width height
    channels`` header, then one line per pixel row.
    """
    def export(self,
               data: np.ndarray,
               path: pathlib.Path,
               metadata: Optional[Dict[str, str]] = None):
        data = np.asarray(data, dtype=np.float32)
        if data.ndim != 3:
            raise ExportError(
                f"Expected an (H, W, C) raster, got shape {data.shape}")
        height, width, channels = data.shape

        try:
            with atomicwrites.atomic_write(
                    path, encoding="utf-8", overwrite=True) as f:
                self.write_header(f, metadata)
                f.write(f"{width} {height} {channels}\n")
                for row in data.reshape(height, width * channels):
                    f.write(" ".join(f"{x:.9g}" for x in row) + "\n")
        except Exception as e:
            logger.exception(f"Unable to export raster: {e}")
            raise ExportError(f"{e}")
