import json
import logging
import pathlib
from typing import Dict, Optional

import atomicwrites
from rich.console import Console
from rich.table import Table

from ..evaluation import EvalReport
from .base_exporter import BaseExporter
from .exceptions import ExportError

logger = logging.getLogger(__name__)

# Width of the text rendering of the table, wide enough for nine columns
TABLE_WIDTH = 120


def build_table(report: EvalReport) -> Table:
    """
    Average ΔE2000 with one row per basis and method, one column per
    illuminant.
    """
    table = Table(title="Average ΔE2000")
    table.add_column("Basis", style="basis")
    table.add_column("Method", style="method")
    for name in report.illuminants:
        table.add_column(name, justify="right")

    averages = report.averages()
    for (basis, method) in sorted(averages):
        columns = averages[(basis, method)]
        table.add_row(
            basis.upper(), method,
            *[f"{columns[name]:.2f}" if name in columns else "-"
              for name in report.illuminants])
    return table


class ReportJSONExporter(BaseExporter):
    def export(self,
               report: EvalReport,
               path: pathlib.Path,
               metadata: Optional[Dict[str, str]] = None):
        content = report.asdict()
        content["metadata"].update(metadata or {})
        try:
            with atomicwrites.atomic_write(
                    path, encoding="utf-8", overwrite=True) as f:
                json.dump(content, f, indent=2, sort_keys=True)
                f.write("\n")
        except Exception as e:
            logger.exception(f"Unable to export report to json: {e}")
            raise ExportError(f"{e}")


class ReportTableExporter(BaseExporter):
    """The evaluation table as aligned plain text"""
    def export(self,
               report: EvalReport,
               path: pathlib.Path,
               metadata: Optional[Dict[str, str]] = None):
        try:
            with atomicwrites.atomic_write(
                    path, encoding="utf-8", overwrite=True) as f:
                self.write_header(
                    f, dict(report.metadata, **(metadata or {})))
                text_console = Console(
                    file=f, width=TABLE_WIDTH, no_color=True,
                    force_terminal=False)
                text_console.print(build_table(report))
        except Exception as e:
            logger.exception(f"Unable to export report table: {e}")
            raise ExportError(f"{e}")
