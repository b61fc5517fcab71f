import logging
from typing import Optional

import numpy as np
from scipy import linalg

from .exceptions import DegenerateBasisError

logger = logging.getLogger(__name__)

# Above this condition number the Gram system is considered singular
MAX_GRAM_CONDITION = 1e12

# Conditioning that still solves but deserves a warning
_WARN_GRAM_CONDITION = 1e8


def compute_dual(S: np.ndarray,
                 weights: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Computes the dual of a set of sensitivity functions.

    Args:
        S: (N, K) matrix whose columns are the basis functions
        weights: quadrature weights of the N samples. When omitted, the
                 plain dot product is used.

    Returns: the (N, K) matrix S̃ = S (Sᵀ W S)⁻¹, so that (W S)ᵀ S̃ = I_K.
             The K×K Gram system is solved by Cholesky factorization.

    Raises:
        DegenerateBasisError if the columns are (numerically) dependent.
    """
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[1] == 0 or S.shape[0] < S.shape[1]:
        raise DegenerateBasisError(
            f"degenerate basis: cannot take the dual of shape {S.shape}")

    weighted = S if weights is None else S * np.asarray(weights)[:, None]
    gram = weighted.T @ S

    condition = np.linalg.cond(gram)
    if not np.isfinite(condition) or condition > MAX_GRAM_CONDITION:
        raise DegenerateBasisError(
            f"degenerate basis: Gram condition number {condition:.3g}")
    if condition > _WARN_GRAM_CONDITION:
        logger.warning(
            f"Basis Gram matrix is poorly conditioned ({condition:.3g})")

    try:
        factor = linalg.cho_factor(gram)
    except linalg.LinAlgError:
        raise DegenerateBasisError(
            "degenerate basis: Gram matrix not positive definite") from None

    # S (G⁻¹)ᵀ with G symmetric
    return linalg.cho_solve(factor, S.T).T
