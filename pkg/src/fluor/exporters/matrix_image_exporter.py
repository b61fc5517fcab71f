import logging
import pathlib
from typing import Dict, Optional

import numpy as np
from matplotlib import colormaps

from .base_exporter import BaseExporter
from .exceptions import ExportError
from .png_exporter import PNGExporter

logger = logging.getLogger(__name__)

DB_FLOOR = -30.0
COLORMAP = "viridis"

# Each matrix entry becomes a square block of this many pixels
CELL_SIZE = 32


def to_decibels(entries: np.ndarray) -> np.ndarray:
    """
    10 log10(|x| / max |x|), clipped to [DB_FLOOR, 0]. A null matrix maps
    to the floor everywhere.
    """
    magnitude = np.abs(np.asarray(entries, dtype=float))
    peak = magnitude.max() if magnitude.size else 0.0
    if peak <= 0:
        return np.full(magnitude.shape, DB_FLOOR)
    with np.errstate(divide="ignore"):
        decibels = 10.0 * np.log10(magnitude / peak)
    return np.clip(decibels, DB_FLOOR, 0.0)


class MatrixImageExporter(BaseExporter):
    """False colour image of a matrix magnitude on a decibel scale"""
    def __init__(self, cell_size: int = CELL_SIZE):
        self.cell_size = cell_size

    def export(self,
               entries: np.ndarray,
               path: pathlib.Path,
               metadata: Optional[Dict[str, str]] = None):
        entries = np.asarray(entries)
        if entries.ndim != 2:
            raise ExportError(
                f"Expected a matrix, got shape {entries.shape}")

        levels = (to_decibels(entries) - DB_FLOOR) / -DB_FLOOR
        rgba = colormaps[COLORMAP](levels)
        pixels = np.round(rgba[..., :3] * 255).astype(np.uint8)

        # Large Donaldson matrices are shown one sample per pixel
        cell = self.cell_size if max(entries.shape) <= 64 else 1
        pixels = np.repeat(np.repeat(pixels, cell, axis=0), cell, axis=1)

        PNGExporter().export(
            pixels, path,
            dict(metadata or {}, db_floor=str(DB_FLOOR), colormap=COLORMAP))
