"""
Run configuration: an optional ``[tool.fluor]`` table in a TOML file,
overridden by the command line flags that were given.
"""
from __future__ import annotations

import dataclasses
import pathlib
from typing import Any, Dict, List, Optional

import toml
from toml.decoder import TomlDecodeError

from .bases.builders import BASIS_NAMES
from .parsers.exceptions import ParsingError
from .reduction import DEFAULT_NAIVE_NORM, Method, NaiveNorm
from .spectral.grid import WavelengthGrid

CONFIG_SECTION = ("tool", "fluor")


@dataclasses.dataclass
class RunConfig:
    command: str = ""
    grid: str = str(WavelengthGrid.canonical())
    basis: str = "xyz"
    method: str = str(Method.OURS)
    naive_norm: str = str(DEFAULT_NAIVE_NORM)
    seed: int = 0
    out: str = "."
    uv_knots: Optional[List[float]] = None
    materials: Optional[str] = None
    width: int = 64
    height: int = 64
    bounces: int = 3
    directions: int = 4
    light_samples: int = 4

    @classmethod
    def fromdict(cls, d: Dict[str, Any]) -> RunConfig:
        """
        Raises:
            ParsingError for unknown keys or invalid values.
        """
        names = {field.name for field in dataclasses.fields(cls)}
        d = {key.replace("-", "_"): value for key, value in d.items()}
        unknown = sorted(set(d) - names)
        if unknown:
            raise ParsingError(
                f"Unknown configuration keys: {', '.join(unknown)}")

        self = cls(**d)
        self.check()
        return self

    @classmethod
    def parse(cls, path: pathlib.Path) -> RunConfig:
        """
        Reads the [tool.fluor] table of a TOML file. A file without the
        table gives the defaults.

        Raises:
            ParsingError if the file is missing or invalid.
        """
        try:
            with open(path, encoding="utf-8") as f:
                content = toml.load(f)
        except FileNotFoundError:
            raise ParsingError(f"Config file {path} not existent")
        except TomlDecodeError as e:
            raise ParsingError(f"Invalid config file {path}: {e}")

        for key in CONFIG_SECTION:
            content = content.get(key, {})
        return cls.fromdict(content)

    def merged(self, **overrides: Any) -> RunConfig:
        """A copy with the overrides that are not None applied"""
        values = self.asdict()
        values.update({key: value for key, value in overrides.items()
                       if value is not None})
        return self.fromdict(values)

    def check(self):
        try:
            WavelengthGrid.parse(self.grid)
            Method(self.method)
            NaiveNorm(self.naive_norm)
        except ValueError as e:
            raise ParsingError(f"Invalid configuration: {e}") from None
        if self.basis not in BASIS_NAMES:
            raise ParsingError(
                f"Unknown basis '{self.basis}', expected one of "
                f"{', '.join(BASIS_NAMES)}")
        for name in ("width", "height", "bounces", "directions",
                     "light_samples"):
            if int(getattr(self, name)) < 1:
                raise ParsingError(f"{name} must be at least 1")

    @property
    def wavelength_grid(self) -> WavelengthGrid:
        return WavelengthGrid.parse(self.grid)

    def asdict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)

    def metadata(self) -> Dict[str, str]:
        """The configuration as flat strings, for artifact headers"""
        result = {}
        for key, value in self.asdict().items():
            if value is None:
                continue
            if isinstance(value, list):
                value = " ".join(repr(float(x)) for x in value)
            result[key] = str(value)
        return result
