"""
Evaluation harness: colour differences between reduced patch renders and
the dense reference, for every material, illuminant, basis and method.
"""
from __future__ import annotations

import dataclasses
import logging
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .bases.basis_set import BasisSet
from .bases.builders import load_cmf_xyz
from .colorimetry import Illuminant, delta_e_2000
from .materials import FluorescentMaterial, Provenance
from .reduction import (
    DEFAULT_NAIVE_NORM, Method, NaiveNorm, downsample, reduce)
from .transport.patch import render_patch_spectral
from .transport.scene import PatchScene

logger = logging.getLogger(__name__)

# Average ΔE2000 published for the measured fluorescent database, keyed by
# (basis, method), then illuminant
MEASURED_DATABASE_AVERAGES: Dict[Tuple[str, str], Dict[str, float]] = {
    ("xyz", "naive"): {"A": 10.11, "E": 9.73, "D60": 12.77, "D65": 12.88,
                       "FL1": 14.92, "FL2": 10.88, "HP5": 10.57},
    ("xyz", "ours"): {"A": 3.92, "E": 5.02, "D60": 3.88, "D65": 3.96,
                      "FL1": 1.14, "FL2": 0.62, "HP5": 2.48},
    ("xyzu", "naive"): {"A": 10.56, "E": 11.20, "D60": 13.43, "D65": 13.40,
                        "FL1": 15.18, "FL2": 11.51, "HP5": 11.22},
    ("xyzu", "ours"): {"A": 3.86, "E": 3.23, "D60": 3.36, "D65": 3.33,
                       "FL1": 1.04, "FL2": 0.52, "HP5": 2.43},
}

PUBLISHED_TOLERANCE = 0.5

# Slack allowed when checking that the UV band does not degrade results
UV_TOLERANCE = 0.5


class EvaluationError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class EvalEntry:
    material: str
    illuminant: str
    basis: str
    method: str
    delta_e: float
    reference_xyz: Tuple[float, float, float]
    method_xyz: Tuple[float, float, float]


@dataclasses.dataclass
class EvalReport:
    entries: List[EvalEntry]
    illuminants: List[str]
    metadata: Dict[str, str] = dataclasses.field(default_factory=dict)
    # Illuminants emitting under 400 nm
    uv_illuminants: List[str] = dataclasses.field(default_factory=list)
    measured: bool = False

    def averages(self) -> Dict[Tuple[str, str], Dict[str, float]]:
        """Mean ΔE per (basis, method) row and illuminant column"""
        values: Dict[Tuple[str, str], Dict[str, List[float]]] = \
            defaultdict(lambda: defaultdict(list))
        for entry in self.entries:
            values[(entry.basis, entry.method)][entry.illuminant].append(
                entry.delta_e)
        return {
            row: {name: float(np.mean(deltas))
                  for name, deltas in columns.items()}
            for row, columns in values.items()
        }

    def ordering_violations(self) -> List[Tuple[str, str]]:
        """(basis, illuminant) pairs where ours does not beat naive"""
        averages = self.averages()
        violations = []
        for (basis, method), columns in averages.items():
            if method != str(Method.OURS):
                continue
            naive = averages.get((basis, str(Method.NAIVE)))
            if naive is None:
                continue
            for name, value in columns.items():
                if name in naive and not value < naive[name]:
                    violations.append((basis, name))
        return violations

    def uv_violations(self) -> List[str]:
        """UV illuminants where ours-XYZU is worse than ours-XYZ"""
        averages = self.averages()
        xyz = averages.get(("xyz", str(Method.OURS)))
        xyzu = averages.get(("xyzu", str(Method.OURS)))
        if xyz is None or xyzu is None:
            return []
        return [name for name in self.uv_illuminants
                if name in xyz and name in xyzu
                and xyzu[name] > xyz[name] + UV_TOLERANCE]

    def published_deviations(self,
                             tolerance: float = PUBLISHED_TOLERANCE
                             ) -> List[Tuple[str, str, str, float, float]]:
        """
        Cells differing from the published measured database averages by
        more than the tolerance, as (basis, method, illuminant, ours,
        published). Empty unless the materials were measured.
        """
        if not self.measured:
            return []
        averages = self.averages()
        deviations = []
        for row, published in MEASURED_DATABASE_AVERAGES.items():
            for name, expected in published.items():
                value = averages.get(row, {}).get(name)
                if value is not None and abs(value - expected) > tolerance:
                    deviations.append((*row, name, value, expected))
        return deviations

    def asdict(self) -> dict:
        return {
            "metadata": dict(self.metadata),
            "illuminants": list(self.illuminants),
            "entries": [dataclasses.asdict(e) for e in self.entries],
            "averages": {
                f"{basis}/{method}": columns
                for (basis, method), columns in self.averages().items()
            },
            "ordering_violations": [
                list(v) for v in self.ordering_violations()],
            "uv_violations": self.uv_violations(),
            "published_deviations": [
                list(d) for d in self.published_deviations()],
        }


def evaluate(materials: Sequence[FluorescentMaterial],
             illuminants: Sequence[Illuminant],
             bases: Sequence[BasisSet],
             methods: Sequence[Method] = (Method.OURS, Method.NAIVE),
             norm: NaiveNorm = DEFAULT_NAIVE_NORM,
             observer: Optional[BasisSet] = None,
             metadata: Optional[Dict[str, str]] = None) -> EvalReport:
    """
    Compares every reduced method against the dense reference on a patch.
    The Lab white of each comparison is the illuminant's own XYZ.

    Raises:
        EvaluationError if no material or illuminant is given.
    """
    if not materials:
        raise EvaluationError("No materials to evaluate")
    if not illuminants:
        raise EvaluationError("No illuminants to evaluate under")

    grid = bases[0].grid if bases else materials[0].P.grid_in
    observer = observer or load_cmf_xyz(grid)

    reduced = {
        (material.name, basis.name, method):
            basis.xyz_transfer @ reduce(material.P, basis, method, norm)
            .entries
        for material in materials
        for basis in bases
        for method in methods
    }

    entries = []
    for illuminant in illuminants:
        white = downsample(illuminant.spectrum, observer).values
        lights = {basis.name: downsample(illuminant.spectrum, basis).values
                  for basis in bases}
        for material in materials:
            reference = render_patch_spectral(
                PatchScene(material, illuminant.spectrum), observer)
            for basis in bases:
                for method in methods:
                    xyz = reduced[(material.name, basis.name, method)] @ \
                        lights[basis.name]
                    entries.append(EvalEntry(
                        material=material.name,
                        illuminant=illuminant.name,
                        basis=basis.name,
                        method=str(method),
                        delta_e=delta_e_2000(reference, xyz, white),
                        reference_xyz=tuple(float(x) for x in reference),
                        method_xyz=tuple(float(x) for x in xyz)))
        logger.info(f"Evaluated {len(materials)} materials under "
                    f"{illuminant.name}")

    return EvalReport(
        entries=entries,
        illuminants=[i.name for i in illuminants],
        metadata=dict(metadata or {}, norm=str(norm)),
        uv_illuminants=[i.name for i in illuminants if i.has_uv],
        measured=any(m.provenance is Provenance.MEASURED for m in materials))
