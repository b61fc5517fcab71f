import logging

import click

from fluor.cli.common import (
    IOFailure, ValidationFailure, load_basis, load_library, load_material,
    make_config, output_dir, run_options)
from fluor.bases.builders import BASIS_NAMES
from fluor.colorimetry import (
    ILLUMINANT_NAMES, STANDARD_ILLUMINANTS, ColorimetryError, illuminant)
from fluor.console import console
from fluor.evaluation import evaluate
from fluor.exporters.exceptions import ExportError
from fluor.exporters.report_exporter import (
    ReportJSONExporter, ReportTableExporter, build_table)
from fluor.materials import GREY, IDENTITY, Provenance
from fluor.reduction import Method, NaiveNorm

logger = logging.getLogger(__file__)


@click.command(
    name="eval",
    help=("Average ΔE2000 of the naive and our reductions against the "
          "spectral reference, per basis and illuminant"))
@click.argument("materials", nargs=-1)
@click.option(
    "--illuminant", "illuminants", multiple=True,
    type=click.Choice(ILLUMINANT_NAMES),
    help="Illuminant column, repeatable. The standard ones by default")
@click.option(
    "--eval-basis", "bases", multiple=True, type=click.Choice(BASIS_NAMES),
    help="Compared basis, repeatable. xyz and xyzu by default")
@click.option(
    "--include-reference", is_flag=True, default=False,
    help="Also evaluate the identity and grey materials")
@run_options
def eval_(materials, illuminants, bases, include_reference, config_path,
          **flags):
    config = make_config("eval", config_path, **flags)
    library = load_library(config)
    grid = config.wavelength_grid

    if materials:
        selected = [load_material(config, name, library)
                    for name in materials]
    else:
        # A manifest replaces the synthetic set
        provenance = Provenance.MEASURED if config.materials is not None \
            else Provenance.SYNTHETIC
        selected = [m for m in library if m.provenance is provenance
                    and m.name not in (IDENTITY, GREY)]
        if include_reference:
            selected += [library.get(IDENTITY), library.get(GREY)]
    if not selected:
        raise ValidationFailure("No material to evaluate")

    try:
        lights = [illuminant(name, grid)
                  for name in (illuminants or STANDARD_ILLUMINANTS)]
    except ColorimetryError as e:
        raise ValidationFailure(f"{e}")

    basis_sets = [load_basis(config, name) for name in bases or
                  ("xyz", "xyzu")]
    with console().status(
            f"Evaluating {len(selected)} materials under "
            f"{len(lights)} illuminants"):
        report = evaluate(
            selected, lights, basis_sets,
            methods=(Method.OURS, Method.NAIVE),
            norm=NaiveNorm(config.naive_norm),
            observer=load_basis(config, "xyz"),
            metadata=config.metadata())

    console().print(build_table(report))

    out = output_dir(config)
    try:
        ReportJSONExporter().export(report, out / "report.json")
        ReportTableExporter().export(report, out / "report.txt")
    except ExportError as e:
        raise IOFailure(f"Unable to write report: {e}")

    for basis, method, name, value, expected in \
            report.published_deviations():
        console().print(
            f"[warning]{basis}/{method} under {name}: {value:.2f} differs "
            f"from the published {expected:.2f}[/warning]")

    ordering = report.ordering_violations()
    uv = report.uv_violations()
    for basis, name in ordering:
        console().print(
            f"[error]Ours is not better than naive in {basis} under "
            f"{name}[/error]")
    for name in uv:
        console().print(
            f"[error]The UV band degrades ours under {name}[/error]")
    if ordering or uv:
        raise ValidationFailure("Evaluation properties do not hold")

    console().print(
        f"[success]Evaluation report written to [path]{out}[/path]"
        "[/success]")
