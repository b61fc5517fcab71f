import logging

import click
import numpy as np

from fluor.cli.common import (
    IOFailure, ValidationFailure, load_basis, load_material, make_config,
    output_dir, reduced_panels, run_options)
from fluor.colorimetry import (
    ILLUMINANT_NAMES, ColorimetryError, delta_e_2000, illuminant,
    xyz_to_rgb8)
from fluor.console import console
from fluor.exporters.exceptions import ExportError
from fluor.exporters.png_exporter import PNGExporter
from fluor.exporters.raster_exporter import RasterExporter
from fluor.reduction import NaiveNorm, downsample
from fluor.transport.patch import (
    patch_scene, render_patch_reduced, render_patch_spectral)

logger = logging.getLogger(__file__)

CELL_SIZE = 32


@click.command(
    help=("Renders one bounce on a patch under each illuminant, "
          "rows a (naive XYZ), b (ours XYZ), c (ours in the basis) and "
          "r (reference)"))
@click.argument("material")
@click.option(
    "--illuminant", "illuminants", multiple=True,
    type=click.Choice(ILLUMINANT_NAMES),
    help="Illuminant column, repeatable. All of them by default")
@run_options
def patch(material, illuminants, config_path, **flags):
    config = make_config("patch", config_path, **flags)
    source = load_material(config, material)
    observer = load_basis(config, "xyz")
    panels = reduced_panels(config)
    norm = NaiveNorm(config.naive_norm)
    names = list(illuminants or ILLUMINANT_NAMES)

    # Rows a, b, c then r, one column per illuminant, white at Y=1
    cells = np.zeros((len(panels) + 1, len(names), 3))
    with console().status("Rendering patches"):
        for column, name in enumerate(names):
            try:
                light = illuminant(name, config.wavelength_grid).spectrum
            except ColorimetryError as e:
                raise ValidationFailure(f"{e}")
            white = downsample(light, observer).values
            scene = patch_scene(source, light)
            reference = render_patch_spectral(scene, observer)
            cells[-1, column] = reference / white[1]
            for row, (label, basis, method) in enumerate(panels):
                xyz = render_patch_reduced(scene, basis, method, norm)
                cells[row, column] = xyz / white[1]
                logger.info(
                    f"{name} {label}: ΔE2000 "
                    f"{delta_e_2000(reference, xyz, white):.3f}")

    rows = [label for label, _, _ in panels] + ["r"]
    metadata = dict(config.metadata(),
                    material=source.name,
                    rows=",".join(rows),
                    columns=",".join(names))
    stem = output_dir(config) / f"{source.name}_patch"
    pixels = np.repeat(np.repeat(xyz_to_rgb8(cells), CELL_SIZE, axis=0),
                       CELL_SIZE, axis=1)
    try:
        PNGExporter().export(pixels, stem.with_suffix(".png"), metadata)
        RasterExporter().export(cells, stem.with_suffix(".txt"), metadata)
    except ExportError as e:
        raise IOFailure(f"Unable to write patch images: {e}")

    console().print(
        f"[success]Rendered patches of [material]{source.name}[/material] "
        f"to [path]{stem}.png[/path][/success]")
