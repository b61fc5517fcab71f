from __future__ import annotations

import dataclasses
import enum
from typing import Tuple

import numpy as np

from ..spectral.grid import WavelengthGrid
from ..spectral.spectrum import Spectrum
from .dual import compute_dual
from .exceptions import BasisError


class Space(enum.Enum):
    """The colour space reduced vectors and matrices live in"""
    XYZ = "xyz"
    XYZU = "xyzu"
    SEVEN = "seven"
    RGB = "rgb"

    def __str__(self) -> str:
        return self.value


XYZ_TRANSFER = np.eye(3)

XYZU_TRANSFER = np.hstack([np.eye(3), np.zeros((3, 1))])

# Maps [x1, x2, x3, y1, y2, z, U] back onto [X, Y, Z, U]
SEVEN_TRANSFER = np.array([
    [1, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 1],
], dtype=float)

for _matrix in (XYZ_TRANSFER, XYZU_TRANSFER, SEVEN_TRANSFER):
    _matrix.setflags(write=False)


@dataclasses.dataclass(frozen=True, eq=False)
class BasisSet:
    """
    K sensitivity functions sampled on a grid, with their dual.

    ``S`` holds one function per column. ``weighted`` is ``W S`` with the
    grid quadrature weights folded in, so that downsampling a spectrum f is
    ``weighted.T @ f``, and ``dual`` satisfies ``weighted.T @ dual = I_K``.
    ``transfer`` maps this basis' coefficients onto the coefficients of the
    basis it was split from (itself for XYZ, XYZ for XYZU, XYZU for the
    seven band set).
    """
    name: str
    grid: WavelengthGrid
    S: np.ndarray
    labels: Tuple[str, ...]
    transfer: np.ndarray
    space: Space

    weighted: np.ndarray = dataclasses.field(init=False, repr=False)
    dual: np.ndarray = dataclasses.field(init=False, repr=False)

    def __post_init__(self):
        S = np.array(self.S, dtype=float)
        if S.shape[0] != self.grid.count or S.ndim != 2:
            raise BasisError(
                f"Basis matrix of shape {S.shape} does not match grid "
                f"{self.grid}")
        if len(self.labels) != S.shape[1]:
            raise BasisError(
                f"{len(self.labels)} labels for {S.shape[1]} functions")

        transfer = np.array(self.transfer, dtype=float)
        if transfer.ndim != 2 or transfer.shape[1] != S.shape[1]:
            raise BasisError(
                f"Transfer matrix of shape {transfer.shape} does not apply "
                f"to {S.shape[1]} coefficients")

        weighted = S * self.grid.weights[:, None]
        dual = compute_dual(S, self.grid.weights)

        for name, value in (("S", S), ("transfer", transfer),
                            ("weighted", weighted), ("dual", dual)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def size(self) -> int:
        return self.S.shape[1]

    @property
    def xyz_transfer(self) -> np.ndarray:
        """The 3×K matrix taking coefficients of this basis to XYZ"""
        transfer = self.transfer
        if transfer.shape[0] == 4:
            transfer = XYZU_TRANSFER @ transfer
        if transfer.shape[0] != 3:
            raise BasisError(
                f"Transfer matrix of {self.name} does not lead to XYZ")
        return transfer

    def column(self, label: str) -> Spectrum:
        try:
            index = self.labels.index(label)
        except ValueError:
            raise BasisError(
                f"Basis {self.name} has no function named {label}") from None
        return Spectrum(self.grid, self.S[:, index])

    def scaled(self, factor: float) -> BasisSet:
        """The same basis with every function multiplied by a factor"""
        return BasisSet(self.name, self.grid, self.S * factor, self.labels,
                        self.transfer, self.space)

    def dual_residual(self) -> float:
        """Max absolute deviation of (W S)ᵀ S̃ from the identity"""
        return float(np.max(np.abs(
            self.weighted.T @ self.dual - np.eye(self.size))))
