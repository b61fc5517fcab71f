import logging

import click
import numpy as np

from fluor.cli.common import (
    IOFailure, ValidationFailure, load_basis, load_material, make_config,
    output_dir, run_options)
from fluor.colorimetry import xyz_to_rgb8
from fluor.console import console
from fluor.exporters.exceptions import ExportError
from fluor.exporters.png_exporter import PNGExporter
from fluor.exporters.swipe_csv_exporter import SwipeCSVExporter
from fluor.reduction import Method, NaiveNorm
from fluor.spectral.exceptions import SpectralError
from fluor.transport.patch import SWIPE_RANGE, monochromatic_swipe

logger = logging.getLogger(__file__)

STRIP_HEIGHT = 32


@click.command(
    help=("Renders a patch lit by a delta illuminant swept over the "
          "input wavelengths"))
@click.argument("material")
@click.option("--start", type=float, default=SWIPE_RANGE[0],
              show_default=True, help="First wavelength, in nm")
@click.option("--stop", type=float, default=SWIPE_RANGE[1],
              show_default=True, help="Last wavelength, in nm")
@run_options
def swipe(material, start, stop, config_path, **flags):
    config = make_config("swipe", config_path, **flags)
    if not start <= stop:
        raise ValidationFailure(f"Empty swipe range {start} to {stop}")
    source = load_material(config, material)
    basis = load_basis(config)
    grid = config.wavelength_grid
    wavelengths = [w for w in grid.wavelengths if start <= w <= stop]
    if not wavelengths:
        raise ValidationFailure(
            f"No wavelength of {grid} between {start} and {stop}")

    try:
        with console().status("Swiping"):
            strip = monochromatic_swipe(
                source, basis, Method(config.method), wavelengths,
                NaiveNorm(config.naive_norm),
                observer=load_basis(config, "xyz"))
    except SpectralError as e:
        raise ValidationFailure(f"{e}")

    metadata = dict(config.metadata(), material=source.name,
                    rows="reduced,reference")
    stem = output_dir(config) / \
        f"{source.name}_swipe_{basis.name}_{config.method}"

    exposure = max(float(np.max(strip.reference[:, 1])), 1e-12)
    rows = np.stack([strip.reduced, strip.reference]) / exposure
    pixels = np.repeat(xyz_to_rgb8(rows), STRIP_HEIGHT, axis=0)
    try:
        SwipeCSVExporter().export(strip, stem.with_suffix(".csv"), metadata)
        PNGExporter().export(pixels, stem.with_suffix(".png"), metadata)
    except ExportError as e:
        raise IOFailure(f"Unable to write swipe: {e}")

    console().print(
        f"[success]Swiped [material]{source.name}[/material] over "
        f"{len(wavelengths)} wavelengths, mean ΔE2000 "
        f"{float(np.mean(strip.delta_e)):.3f}, written to "
        f"[path]{stem}.csv[/path][/success]")
