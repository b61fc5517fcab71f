"""Options and helpers shared by the subcommands"""
import functools
import logging
import pathlib
from typing import Callable, Optional

import click

from ..bases.basis_set import BasisSet
from ..bases.builders import BASIS_NAMES, build_basis
from ..bases.exceptions import BasisError
from ..config import RunConfig
from ..materials import FluorescentMaterial, MaterialLibrary, load_donaldson
from ..parsers.exceptions import ParsingError
from ..reduction import Method, NaiveNorm

logger = logging.getLogger(__name__)


class ValidationFailure(click.ClickException):
    """Invalid inputs, or a checked property that does not hold"""
    exit_code = 2


class IOFailure(click.ClickException):
    exit_code = 3


def run_options(f: Callable) -> Callable:
    """The options every subcommand accepts"""
    options = [
        click.option("--config", "config_path",
                     type=click.Path(dir_okay=False),
                     help="TOML file with a [tool.fluor] table"),
        click.option("--grid", help="Wavelength grid as min:max:step"),
        click.option("--basis", type=click.Choice(BASIS_NAMES),
                     help="Sensitivity basis"),
        click.option("--method",
                     type=click.Choice([str(m) for m in Method]),
                     help="Reduction method"),
        click.option("--naive-norm",
                     type=click.Choice([str(n) for n in NaiveNorm]),
                     help="Normalization of the naive reduction"),
        click.option("--seed", type=int, help="Sampling seed"),
        click.option("--out", type=click.Path(file_okay=False),
                     help="Output directory"),
        click.option("--materials", type=click.Path(dir_okay=False),
                     help="Material manifest"),
    ]
    return functools.reduce(lambda acc, option: option(acc),
                            reversed(options), f)


def make_config(command: str,
                config_path: Optional[str],
                **flags) -> RunConfig:
    """
    The configuration file, if any, overridden by the given flags.

    Raises:
        IOFailure if the configuration file does not exist.
        ValidationFailure if it is invalid.
    """
    if config_path is not None and not pathlib.Path(config_path).exists():
        raise IOFailure(f"Config file {config_path} does not exist")
    try:
        base = RunConfig() if config_path is None \
            else RunConfig.parse(pathlib.Path(config_path))
        return base.merged(command=command, **flags)
    except (ParsingError, ValueError) as e:
        raise ValidationFailure(f"Invalid configuration: {e}")


def load_library(config: RunConfig) -> MaterialLibrary:
    """
    The synthetic materials, plus the manifest's materials when one is
    configured.
    """
    grid = config.wavelength_grid
    library = MaterialLibrary.synthetic(grid)
    if config.materials is None:
        return library

    manifest = pathlib.Path(config.materials)
    if not manifest.exists():
        raise IOFailure(f"Material manifest {manifest} does not exist")
    try:
        measured = MaterialLibrary.from_manifest(manifest, grid)
    except (ParsingError, ValueError) as e:
        logger.exception("Unable to load material manifest")
        raise ValidationFailure(f"Unable to load materials: {e}")

    for material in measured:
        library.add(material)
    return library


def load_material(config: RunConfig,
                  name_or_path: str,
                  library: Optional[MaterialLibrary] = None
                  ) -> FluorescentMaterial:
    """
    A material of the library, or a Donaldson file when no library
    material has the name.
    """
    library = library or load_library(config)
    if name_or_path in library:
        return library.get(name_or_path)

    path = pathlib.Path(name_or_path)
    if not path.exists():
        raise IOFailure(
            f"{name_or_path} is neither a known material nor a file. "
            f"Known materials: {', '.join(library.names)}")
    try:
        return load_donaldson(path, config.wavelength_grid)
    except (ParsingError, ValueError) as e:
        logger.exception(f"Unable to load {path}")
        raise ValidationFailure(f"Unable to load material {path}: {e}")


def load_basis(config: RunConfig, name: Optional[str] = None) -> BasisSet:
    try:
        return build_basis(name or config.basis, config.wavelength_grid,
                           config.uv_knots)
    except (BasisError, ValueError) as e:
        raise ValidationFailure(f"Unable to build basis: {e}")


def output_dir(config: RunConfig) -> pathlib.Path:
    path = pathlib.Path(config.out)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise IOFailure(f"Unable to create output directory {path}: {e}")
    return path


def reduced_panels(config: RunConfig):
    """
    The compared reductions as (label, basis, method): naive and ours in
    XYZ, then ours in the configured basis.
    """
    xyz = load_basis(config, "xyz")
    return [("a", xyz, Method.NAIVE),
            ("b", xyz, Method.OURS),
            ("c", load_basis(config), Method.OURS)]
