import csv
import logging
import pathlib
from typing import Dict, Optional

import atomicwrites

from ..transport.patch import SwipeStrip
from .base_exporter import BaseExporter
from .exceptions import ExportError

logger = logging.getLogger(__name__)

HEADER = ["wavelength",
          "reference_x", "reference_y", "reference_z",
          "reduced_x", "reduced_y", "reduced_z",
          "delta_e"]


class SwipeCSVExporter(BaseExporter):
    def export(self,
               strip: SwipeStrip,
               path: pathlib.Path,
               metadata: Optional[Dict[str, str]] = None):
        try:
            with atomicwrites.atomic_write(
                    path, newline="", encoding="utf-8",
                    overwrite=True) as f:
                self.write_header(f, metadata)
                writer = csv.writer(f)
                writer.writerow(HEADER)
                for index, wavelength in enumerate(strip.wavelengths):
                    writer.writerow(
                        [repr(float(wavelength)),
                         *[repr(float(x)) for x in strip.reference[index]],
                         *[repr(float(x)) for x in strip.reduced[index]],
                         repr(float(strip.delta_e[index]))])
        except Exception as e:
            logger.exception(f"Unable to export swipe to csv: {e}")
            raise ExportError(f"{e}")
