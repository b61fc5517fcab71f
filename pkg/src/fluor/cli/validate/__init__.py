import json
import logging

import atomicwrites
import click
from rich.table import Table

from fluor.cli.common import (
    IOFailure, load_library, load_material, make_config, output_dir,
    run_options)
from fluor.console import console
from fluor.materials import validate as validate_material

logger = logging.getLogger(__file__)


@click.command(
    help="Reports anti-Stokes energy, energy gain and clamped entries")
@click.argument("materials", nargs=-1)
@run_options
def validate(materials, config_path, **flags):
    config = make_config("validate", config_path, **flags)
    library = load_library(config)
    selected = [load_material(config, name, library) for name in materials] \
        if materials else list(library)

    reports = [validate_material(material) for material in selected]

    table = Table(title="Material validation")
    table.add_column("Material", style="material")
    table.add_column("Anti-Stokes", justify="right")
    table.add_column("Max row integral", justify="right")
    table.add_column("Clamped", justify="right")
    for report in reports:
        table.add_row(report.name,
                      f"{report.anti_stokes_fraction:.4%}",
                      f"{report.max_row_integral:.4f}",
                      str(report.clamped))
    console().print(table)

    path = output_dir(config) / "validation.json"
    content = {
        "metadata": config.metadata(),
        "materials": [report.asdict() for report in reports],
    }
    try:
        with atomicwrites.atomic_write(
                path, encoding="utf-8", overwrite=True) as f:
            json.dump(content, f, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as e:
        logger.exception("Unable to write validation report")
        raise IOFailure(f"Unable to write {path}: {e}")

    console().print(
        f"[success]Validated {len(reports)} materials, report in "
        f"[path]{path}[/path][/success]")
