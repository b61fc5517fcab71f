from __future__ import annotations

import dataclasses
from typing import Union

import numpy as np

from .exceptions import BasisError


@dataclasses.dataclass(frozen=True)
class SmoothstepParams:
    """Centre and half width, in nm, of a smoothstep transition"""
    mu: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise BasisError(
                f"Smoothstep width must be positive, got {self.sigma}")


# Separates the short wavelength lobe of x̄ from its main lobe
X_LOBE_SPLIT = SmoothstepParams(500.0, 2.0)
X_SPLIT = SmoothstepParams(590.0, 60.0)
Y_SPLIT = SmoothstepParams(570.0, 60.0)


def smoothstep(wavelength: Union[float, np.ndarray],
               p: SmoothstepParams) -> Union[float, np.ndarray]:
    """3t² - 2t³ with t = ((λ - μ)/σ + 1)/2 clipped to [0, 1]"""
    t = np.clip(0.5 * ((np.asarray(wavelength) - p.mu) / p.sigma + 1.0),
                0.0, 1.0)
    value = 3 * t ** 2 - 2 * t ** 3
    if np.ndim(value) == 0:
        return float(value)
    return value
