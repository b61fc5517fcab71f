import logging

import click

from fluor.cli.common import (
    IOFailure, ValidationFailure, load_basis, load_material, make_config,
    output_dir, run_options)
from fluor.colorimetry import M_XYZ_TO_SRGB
from fluor.console import console
from fluor.exporters.exceptions import ExportError
from fluor.exporters.matrix_image_exporter import MatrixImageExporter
from fluor.parsers.reduced import save_reduced
from fluor.reduction import (
    Method, NaiveNorm, ReductionError, conjugate_reduced, reduce,
    reduce_7_to_4)

logger = logging.getLogger(__file__)


@click.command(
    name="reduce",
    help="Reduces the Donaldson matrix of a material in a basis")
@click.argument("material")
@click.option(
    "--rgb", is_flag=True, default=False,
    help="Also write the matrix conjugated to linear sRGB (xyz basis only)")
@click.option(
    "--connect", is_flag=True, default=False,
    help="Also write the 4x7 connection matrix (seven basis only)")
@run_options
def reduce_(material, rgb, connect, config_path, **flags):
    config = make_config("reduce", config_path, **flags)
    source = load_material(config, material)
    basis = load_basis(config)
    method = Method(config.method)
    out = output_dir(config)

    if rgb and basis.name != "xyz":
        raise ValidationFailure("--rgb needs the xyz basis")
    if connect and basis.name != "seven":
        raise ValidationFailure("--connect needs the seven basis")

    try:
        R = reduce(source.P, basis, method, NaiveNorm(config.naive_norm))
        extra = {}
        if rgb:
            extra["rgb"] = conjugate_reduced(R, M_XYZ_TO_SRGB)
        if connect:
            extra["connect"] = reduce_7_to_4(R, basis.transfer)
    except ReductionError as e:
        raise ValidationFailure(f"Unable to reduce {source.name}: {e}")

    metadata = dict(config.metadata(), material=source.name)
    stem = f"{source.name}_{basis.name}_{method}"
    matrix_path = out / f"{stem}.txt"
    image_path = out / f"{stem}.png"
    try:
        save_reduced(R, matrix_path, metadata)
        MatrixImageExporter().export(R.entries, image_path, metadata)
        for suffix, matrix in extra.items():
            save_reduced(matrix, out / f"{stem}_{suffix}.txt", metadata)
    except (ExportError, OSError) as e:
        raise IOFailure(f"Unable to write reduced matrix: {e}")

    console().print(
        f"[success]Reduced [material]{source.name}[/material] in "
        f"[basis]{basis.name}[/basis] with [method]{method}[/method] to "
        f"[path]{matrix_path}[/path][/success]")
