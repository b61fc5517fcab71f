import logging
import pathlib

import click
import numpy as np

from fluor.cli.common import (
    IOFailure, ValidationFailure, load_basis, load_library, load_material,
    make_config, output_dir, reduced_panels, run_options)
from fluor.colorimetry import ILLUMINANT_NAMES, illuminant
from fluor.console import console
from fluor.exporters.exceptions import ExportError
from fluor.exporters.png_exporter import PNGExporter
from fluor.exporters.raster_exporter import RasterExporter
from fluor.materials import GREY
from fluor.parsers.exceptions import ParsingError
from fluor.parsers.scene import SceneDescription
from fluor.reduction import NaiveNorm
from fluor.transport.exceptions import TransportError
from fluor.transport.integrators import (
    adjoint_trace, light_trace, render_reference)
from fluor.transport.scene import ProbeScene, default_probe_scene

logger = logging.getLogger(__file__)

# Percentile of the reference luminance displayed as white
EXPOSURE_PERCENTILE = 99.0


@click.command(
    help=("Renders the probe scene forward and adjoint for panels a "
          "(naive XYZ), b (ours XYZ), c (ours in the basis), and the "
          "spectral reference r"))
@click.argument("material", required=False)
@click.option("--scene", "scene_path", type=click.Path(dir_okay=False),
              help="Scene description file, instead of the default box")
@click.option("--illuminant", "illuminant_name", default="D65",
              type=click.Choice(ILLUMINANT_NAMES), show_default=True,
              help="Emitter spectrum of the default scene")
@click.option("--floor", default=GREY, show_default=True,
              help="Floor material of the default scene")
@click.option("--width", type=int, help="Image width")
@click.option("--height", type=int, help="Image height")
@click.option("--bounces", type=int, help="Number of bounces")
@click.option("--directions", type=int,
              help="Continuation rays at every vertex")
@click.option("--light-samples", type=int,
              help="Emitter samples at every vertex")
@click.option(
    "--connect", is_flag=True, default=False,
    help=("Panel c carries seven band light and reaches the camera "
          "through the 4x7 connection matrices (seven basis only)"))
@run_options
def render(material, scene_path, illuminant_name, floor, connect,
           config_path, **flags):
    config = make_config("render", config_path, **flags)
    if connect and config.basis != "seven":
        raise ValidationFailure("--connect needs the seven basis")

    scene = _load_scene(config, material, scene_path, illuminant_name, floor)
    panels = reduced_panels(config)
    norm = NaiveNorm(config.naive_norm)
    out = output_dir(config)
    metadata = dict(config.metadata(), connect=str(connect))
    if scene_path is None:
        metadata.update(material=str(material), illuminant=illuminant_name,
                        floor=floor)
    else:
        metadata.update(scene=scene_path)

    try:
        with console().status("Rendering the spectral reference"):
            reference = render_reference(
                scene, load_basis(config, "xyz"), seed=config.seed).values
        exposure = _exposure(reference)
        _write(reference, out / "render_r", exposure,
               dict(metadata, panel="r", integrator="reference"))

        for label, basis, method in panels:
            connected = connect and label == "c"
            with console().status(f"Rendering panel {label}"):
                forward = light_trace(scene, basis, method=method,
                                      norm=norm, seed=config.seed,
                                      connect=connected)
                adjoint = adjoint_trace(scene, basis, method=method,
                                        norm=norm, seed=config.seed,
                                        connect=connected)
            deviation = float(np.max(np.abs(forward.values - adjoint.values)))
            console().print(
                f"[message]Panel {label}: [basis]{basis.name}[/basis] "
                f"[method]{method}[/method], forward/adjoint deviation "
                f"{deviation:.3g}[/message]")

            panel = dict(metadata, panel=label, basis=basis.name,
                         method=str(method))
            _write(forward.to_xyz(basis), out / f"render_{label}", exposure,
                   dict(panel, integrator="forward"))
            _write(adjoint.to_xyz(basis), out / f"render_{label}_adjoint",
                   exposure, dict(panel, integrator="adjoint"))
    except TransportError as e:
        raise ValidationFailure(f"Unable to render: {e}")
    except ExportError as e:
        raise IOFailure(f"Unable to write render: {e}")

    console().print(
        f"[success]Rendered panels a, b, c and r to [path]{out}[/path]"
        "[/success]")


def _load_scene(config, material, scene_path, illuminant_name, floor
                ) -> ProbeScene:
    library = load_library(config)
    if scene_path is not None:
        if not pathlib.Path(scene_path).exists():
            raise IOFailure(f"Scene file {scene_path} does not exist")
        try:
            return ProbeScene.from_description(
                SceneDescription.parse(scene_path), library)
        except (ParsingError, ValueError) as e:
            raise ValidationFailure(f"Invalid scene {scene_path}: {e}")

    if material is None:
        raise ValidationFailure("Give a material or a --scene file")
    grid = config.wavelength_grid
    try:
        return default_probe_scene(
            grid,
            load_material(config, material, library),
            load_material(config, floor, library),
            illuminant(illuminant_name, grid).spectrum,
            width=config.width,
            height=config.height,
            bounces=config.bounces,
            directions=config.directions,
            light_samples=config.light_samples)
    except ValueError as e:
        raise ValidationFailure(f"Invalid scene: {e}")


def _exposure(reference: np.ndarray) -> float:
    luminance = reference[..., 1]
    value = float(np.percentile(luminance, EXPOSURE_PERCENTILE))
    return value if value > 0 else 1.0


def _write(xyz: np.ndarray, stem: pathlib.Path, exposure: float, metadata):
    metadata = dict(metadata, exposure=repr(exposure))
    PNGExporter(exposure).export(xyz, stem.with_suffix(".png"), metadata)
    RasterExporter().export(xyz, stem.with_suffix(".txt"), metadata)
