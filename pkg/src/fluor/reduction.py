"""
Reduction of Donaldson matrices to small matrices acting on the
coefficients of a sensitivity basis.

With S the basis functions, W the quadrature weights and S̃ the dual basis,
downsampling a spectrum is ``(W S)ᵀ f``, upsampling coefficients is
``S̃ c`` and a Donaldson matrix P reduces to ``(W S)ᵀ P S̃``. The naive
baseline instead uses normalized functions on both sides.
"""
from __future__ import annotations

import dataclasses
import enum
import logging
from typing import Optional

import numpy as np

from .bases.basis_set import BasisSet, SEVEN_TRANSFER, Space
from .spectral.donaldson import DonaldsonMatrix
from .spectral.exceptions import GridMismatchError
from .spectral.spectrum import Spectrum

logger = logging.getLogger(__name__)


class ReductionError(ValueError):
    pass


class SpaceMismatchError(ReductionError):
    pass


class Method(enum.Enum):
    OURS = "ours"
    NAIVE = "naive"

    def __str__(self) -> str:
        return self.value


class NaiveNorm(enum.Enum):
    L1 = "l1"
    L2 = "l2"

    def __str__(self) -> str:
        return self.value


DEFAULT_NAIVE_NORM = NaiveNorm.L2


@dataclasses.dataclass(frozen=True, eq=False)
class ColorVector:
    """Reduced radiance or throughput coefficients"""
    values: np.ndarray
    space: Space

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1:
            raise ReductionError(
                f"Colour vectors are one dimensional, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ReductionError("Colour vector entries must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def size(self) -> int:
        return len(self.values)

    def scaled(self, factor: float) -> ColorVector:
        return ColorVector(self.values * factor, self.space)


@dataclasses.dataclass(frozen=True, eq=False)
class ReducedMatrix:
    """
    K_out×K_in matrix taking coefficients in ``basis_in`` to coefficients in
    ``basis_out``. ``norm`` is only set for the naive reduction.
    """
    entries: np.ndarray
    basis_in: str
    basis_out: str
    space: Space
    method: Method = Method.OURS
    norm: Optional[NaiveNorm] = None

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2:
            raise ReductionError(
                f"Reduced matrices are two dimensional, got {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise ReductionError("Reduced matrix entries must be finite")
        if self.basis_in == self.basis_out and \
                entries.shape[0] != entries.shape[1]:
            raise ReductionError(
                f"Reduced matrix within {self.basis_in} must be square, "
                f"got {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def size_in(self) -> int:
        return self.entries.shape[1]

    @property
    def size_out(self) -> int:
        return self.entries.shape[0]

    def apply(self, c: ColorVector) -> ColorVector:
        """One reduced bounce"""
        if c.size != self.size_in:
            raise SpaceMismatchError(
                f"Cannot apply a {self.entries.shape} matrix to a vector "
                f"of size {c.size}")
        space = Space(self.basis_out) \
            if self.basis_out in _SPACE_VALUES else self.space
        return ColorVector(self.entries @ c.values, space)


_SPACE_VALUES = {space.value for space in Space}


def downsample(f: Spectrum, basis: BasisSet) -> ColorVector:
    """c_k = ∫ f s_k dλ under the grid quadrature"""
    if f.grid != basis.grid:
        raise GridMismatchError(
            f"Spectrum on {f.grid} cannot be downsampled by a basis on "
            f"{basis.grid}")
    return ColorVector(basis.weighted.T @ f.values, basis.space)


def upsample(c: ColorVector, basis: BasisSet) -> Spectrum:
    """The combination of dual functions with coefficients c"""
    if c.space != basis.space or c.size != basis.size:
        raise SpaceMismatchError(
            f"Cannot upsample a {c.space} vector of size {c.size} with "
            f"basis {basis.name}")
    return Spectrum(basis.grid, basis.dual @ c.values)


def reduce_ours(P: DonaldsonMatrix, basis: BasisSet) -> ReducedMatrix:
    """
    Reduces a Donaldson matrix to (W S)ᵀ P S̃.

    The identity material reduces to the identity matrix, and a reduced
    bounce of any upsampled vector is the downsampled dense bounce.
    """
    _check_grids(P, basis)
    return ReducedMatrix(
        entries=basis.weighted.T @ P.entries @ basis.dual,
        basis_in=basis.name,
        basis_out=basis.name,
        space=basis.space,
        method=Method.OURS)


def naive_normalized(basis: BasisSet,
                     norm: NaiveNorm = DEFAULT_NAIVE_NORM) -> np.ndarray:
    """The basis functions each divided by their L1 or L2 norm"""
    weights = basis.grid.weights[:, None]
    if norm is NaiveNorm.L1:
        norms = np.sum(weights * np.abs(basis.S), axis=0)
    else:
        norms = np.sqrt(np.sum(weights * basis.S ** 2, axis=0))

    if np.any(norms <= 0):
        raise ReductionError(f"Basis {basis.name} has a null function")
    return basis.S / norms[None, :]


def reduce_naive(P: DonaldsonMatrix,
                 basis: BasisSet,
                 norm: NaiveNorm = DEFAULT_NAIVE_NORM) -> ReducedMatrix:
    """
    Reduces a Donaldson matrix to (W S̄)ᵀ P S̄ with normalized functions S̄.
    Unlike reduce_ours, the identity material does not reduce to the
    identity.

    The norm defaults to L2. With it every S̄ has unit energy, so the
    identity reduces to a unit diagonal plus the positive overlaps of the
    functions, and all the error shows up as added light. L1 is kept for
    comparison; the norm used is recorded on the result.
    """
    _check_grids(P, basis)
    normalized = naive_normalized(basis, norm)
    weighted = normalized * basis.grid.weights[:, None]
    return ReducedMatrix(
        entries=weighted.T @ P.entries @ normalized,
        basis_in=basis.name,
        basis_out=basis.name,
        space=basis.space,
        method=Method.NAIVE,
        norm=norm)


def reduce(P: DonaldsonMatrix,
           basis: BasisSet,
           method: Method = Method.OURS,
           norm: NaiveNorm = DEFAULT_NAIVE_NORM) -> ReducedMatrix:
    if method is Method.NAIVE:
        return reduce_naive(P, basis, norm)
    return reduce_ours(P, basis)


def conjugate_reduced(R: ReducedMatrix,
                      M: np.ndarray,
                      space: Optional[Space] = None) -> ReducedMatrix:
    """
    Expresses a 3×3 reduced matrix in another colour space: M R M⁻¹.

    Args:
        R: a reduced matrix in XYZ or RGB space
        M: the 3×3 change of coordinates
        space: the space of the result. Defaults to RGB for an XYZ matrix
               and XYZ for an RGB one.

    Raises:
        SpaceMismatchError if R is not a 3×3 XYZ or RGB matrix.
        ReductionError if M is singular.
    """
    if R.entries.shape != (3, 3) or R.space not in (Space.XYZ, Space.RGB):
        raise SpaceMismatchError(
            f"Only 3×3 XYZ or RGB matrices can be conjugated, got a "
            f"{R.entries.shape} {R.space} matrix")

    M = np.asarray(M, dtype=float)
    if M.shape != (3, 3):
        raise ReductionError(f"Expected a 3×3 matrix, got {M.shape}")
    if np.linalg.matrix_rank(M) < 3:
        raise ReductionError("Cannot conjugate by a singular matrix")

    if space is None:
        space = Space.RGB if R.space is Space.XYZ else Space.XYZ

    # M R M⁻¹ = (M⁻ᵀ (M R)ᵀ)ᵀ
    entries = np.linalg.solve(M.T, (M @ R.entries).T).T
    return ReducedMatrix(entries, str(space), str(space), space,
                         R.method, R.norm)


def reduce_7_to_4(R7: ReducedMatrix,
                  T: np.ndarray = SEVEN_TRANSFER) -> ReducedMatrix:
    """
    The 4×7 connection matrix T R7, turning a seven band light vector into
    XYZU coefficients after its last bounce.

    Raises:
        SpaceMismatchError if R7 is not 7×7 or T is not 4×7.
    """
    T = np.asarray(T, dtype=float)
    if R7.entries.shape != (7, 7):
        raise SpaceMismatchError(
            f"Expected a 7×7 reduced matrix, got {R7.entries.shape}")
    if T.shape != (4, 7):
        raise SpaceMismatchError(
            f"Expected a 4×7 transfer matrix, got {T.shape}")

    return ReducedMatrix(
        entries=T @ R7.entries,
        basis_in=R7.basis_in,
        basis_out="xyzu",
        space=Space.SEVEN,
        method=R7.method,
        norm=R7.norm)


def _check_grids(P: DonaldsonMatrix, basis: BasisSet):
    if P.grid_in != basis.grid or P.grid_out != basis.grid:
        raise GridMismatchError(
            f"Donaldson matrix on {P.grid_in} x {P.grid_out} must be "
            f"resampled to {basis.grid} before reduction")
