"""
One bounce on a flat Lambertian patch under unit hemispherical irradiance,
where the cosine integral cancels the 1/π of the Lambertian lobe and a
bounce is a plain matrix product.
"""
import dataclasses
import logging
from typing import Optional, Sequence

import numpy as np

from ..bases.basis_set import BasisSet, Space
from ..bases.builders import load_cmf_xyz
from ..colorimetry import delta_e_2000
from ..materials import FluorescentMaterial
from ..reduction import (
    DEFAULT_NAIVE_NORM, Method, NaiveNorm, downsample, reduce)
from ..spectral.spectrum import Spectrum, constant_spectrum, delta_spectrum
from .exceptions import TransportError
from .scene import PatchScene

logger = logging.getLogger(__name__)

# Swipe range of the input wavelengths, in nm
SWIPE_RANGE = (300.0, 700.0)


def render_patch_spectral(scene: PatchScene,
                          observer: Optional[BasisSet] = None) -> np.ndarray:
    """
    Dense reference: the illuminant reradiated by the full Donaldson matrix,
    projected on the XYZ colour matching functions.
    """
    P = scene.material.P
    if observer is None:
        observer = load_cmf_xyz(scene.illuminant.grid)
    if observer.space is not Space.XYZ:
        raise TransportError("The reference is projected on an XYZ basis")

    reradiated = P.apply(scene.illuminant)
    return downsample(reradiated, observer).values


def render_patch_reduced(scene: PatchScene,
                         basis: BasisSet,
                         method: Method = Method.OURS,
                         norm: NaiveNorm = DEFAULT_NAIVE_NORM) -> np.ndarray:
    """T R c_i in XYZ, with c_i the downsampled illuminant"""
    R = reduce(scene.material.P, basis, method, norm)
    light = downsample(scene.illuminant, basis)
    return basis.xyz_transfer @ R.apply(light).values


@dataclasses.dataclass(frozen=True, eq=False)
class SwipeStrip:
    """
    Patch colours for delta illuminants at each wavelength, from the dense
    reference and from a reduced method, with their colour differences
    against an equal energy white as bright as the brightest reference.
    """
    wavelengths: np.ndarray
    reference: np.ndarray
    reduced: np.ndarray
    delta_e: np.ndarray
    method: Method
    basis: str


def monochromatic_swipe(material: FluorescentMaterial,
                        basis: BasisSet,
                        method: Method = Method.OURS,
                        wavelengths: Optional[Sequence[float]] = None,
                        norm: NaiveNorm = DEFAULT_NAIVE_NORM,
                        observer: Optional[BasisSet] = None) -> SwipeStrip:
    """
    Renders the patch once per input wavelength with a discrete delta
    illuminant.

    Raises:
        OffGridError if a wavelength is not a grid sample.
    """
    grid = basis.grid
    if wavelengths is None:
        low, high = SWIPE_RANGE
        wavelengths = [w for w in grid.wavelengths if low <= w <= high]
    wavelengths = np.asarray(wavelengths, dtype=float)
    observer = observer or load_cmf_xyz(grid)

    R = reduce(material.P, basis, method, norm)
    transfer = basis.xyz_transfer

    reference = []
    reduced = []
    for wavelength in wavelengths:
        delta = delta_spectrum(wavelength, grid)
        reference.append(render_patch_spectral(
            PatchScene(material, delta), observer))
        reduced.append(
            transfer @ R.apply(downsample(delta, basis)).values)

    reference_array = np.array(reference)
    reduced_array = np.array(reduced)
    white = _swipe_white(observer, reference_array)
    delta_e = np.array([
        delta_e_2000(a, b, white)
        for a, b in zip(reference_array, reduced_array)])

    logger.info(
        f"Swiped {material.name} over {len(wavelengths)} wavelengths, "
        f"{method} {basis.name}")
    return SwipeStrip(wavelengths, reference_array, reduced_array, delta_e,
                      method, basis.name)


def _swipe_white(observer: BasisSet, reference: np.ndarray) -> np.ndarray:
    equal_energy = downsample(
        constant_spectrum(1.0, observer.grid), observer).values
    brightest = float(np.max(reference[:, 1])) if len(reference) else 0.0
    if brightest <= 0:
        brightest = 1.0
    return equal_energy * (brightest / equal_energy[1])


def patch_scene(material: FluorescentMaterial,
                illuminant: Spectrum) -> PatchScene:
    """
    Raises:
        TransportError if material and illuminant are on different grids.
    """
    if material.P.grid_in != illuminant.grid:
        raise TransportError(
            f"Illuminant on {illuminant.grid} cannot light {material.name} "
            f"on {material.P.grid_in}")
    return PatchScene(material, illuminant)
