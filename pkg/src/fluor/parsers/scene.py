"""
Probe scene description format. One statement per line, '#' comments:

    emitter <spectrum> ox oy oz ux uy uz vx vy vz
    quad ox oy oz ux uy uz vx vy vz <material>
    camera px py pz tx ty tz fov width height
    bounces <n>
    directions <n>
    light_samples <n>

Rectangles are a corner and two orthogonal edges; they face along
u × v. The emitter spectrum is an illuminant name or a path to a spectrum
file, relative to the scene file. Paths containing '#' must be quoted.
"""
from __future__ import annotations

import dataclasses
import pathlib
import shlex
from io import TextIOWrapper
from typing import List, Optional, Tuple, Union

from .exceptions import ParsingError

Vector = Tuple[float, float, float]


@dataclasses.dataclass
class QuadSpec:
    corner: Vector
    edge_u: Vector
    edge_v: Vector
    material: str


@dataclasses.dataclass
class EmitterSpec:
    spectrum: str
    corner: Vector
    edge_u: Vector
    edge_v: Vector


@dataclasses.dataclass
class CameraSpec:
    position: Vector
    target: Vector
    fov: float
    width: int
    height: int


@dataclasses.dataclass
class SceneDescription:
    emitter: EmitterSpec
    quads: List[QuadSpec]
    camera: CameraSpec
    bounces: int = 3
    directions: int = 4
    light_samples: int = 4
    base_dir: Optional[pathlib.Path] = None

    @classmethod
    def parse(cls,
              fileobj_or_path: Union[TextIOWrapper, pathlib.Path, str]
              ) -> SceneDescription:
        """
        Raises:
            ParsingError if the file is missing or a statement is invalid,
            unknown, or missing.
        """
        base_dir = None
        if isinstance(fileobj_or_path, (str, pathlib.Path)):
            path = pathlib.Path(fileobj_or_path)
            base_dir = path.parent
            try:
                with open(path, encoding="utf-8") as f:
                    lines = f.read().splitlines()
            except FileNotFoundError:
                raise ParsingError(f"Scene file {path} not existent")
        else:
            lines = fileobj_or_path.read().splitlines()

        emitter = None
        camera = None
        quads = []
        counts = {}
        for lineno, line in enumerate(lines, start=1):
            try:
                tokens = shlex.split(line, comments=True)
            except ValueError as e:
                raise ParsingError(f"Line {lineno}: {e}") from None
            if not tokens:
                continue
            keyword, *args = tokens
            try:
                if keyword == "emitter":
                    if emitter is not None:
                        raise ParsingError("only one emitter is supported")
                    _expect(args, 10)
                    emitter = EmitterSpec(args[0], *_vectors(args[1:10]))
                elif keyword == "quad":
                    _expect(args, 10)
                    quads.append(QuadSpec(*_vectors(args[0:9]), args[9]))
                elif keyword == "camera":
                    _expect(args, 9)
                    position, target = _vectors(args[0:6])
                    camera = CameraSpec(position, target, float(args[6]),
                                        _positive(args[7]),
                                        _positive(args[8]))
                elif keyword in ("bounces", "directions", "light_samples"):
                    _expect(args, 1)
                    counts[keyword] = _positive(args[0])
                else:
                    raise ParsingError(f"unknown statement '{keyword}'")
            except ParsingError as e:
                raise ParsingError(f"Line {lineno}: {e}") from None
            except ValueError:
                raise ParsingError(
                    f"Line {lineno}: non numeric value in '{line}'") from None

        if emitter is None:
            raise ParsingError("Scene has no emitter")
        if camera is None:
            raise ParsingError("Scene has no camera")

        return cls(emitter=emitter, quads=quads, camera=camera,
                   base_dir=base_dir, **counts)


def _expect(args: List[str], count: int):
    if len(args) != count:
        raise ParsingError(f"expected {count} arguments, got {len(args)}")


def _vectors(args: List[str]) -> List[Vector]:
    values = [float(x) for x in args]
    return [(values[i], values[i + 1], values[i + 2])
            for i in range(0, len(values), 3)]


def _positive(arg: str) -> int:
    value = int(arg)
    if value < 1:
        raise ParsingError(f"expected a positive integer, got {value}")
    return value
