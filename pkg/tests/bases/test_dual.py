import numpy as np
import pytest

from fluor.bases.dual import compute_dual
from fluor.bases.exceptions import DegenerateBasisError


def test_dual_of_orthonormal_columns():
    S = np.eye(5)[:, :3]
    assert np.allclose(compute_dual(S), S)


def test_dual_identity_with_weights():
    rng = np.random.default_rng(3)
    S = rng.random((50, 4))
    weights = np.full(50, 2.0)
    weights[0] = weights[-1] = 1.0

    dual = compute_dual(S, weights)

    assert dual.shape == S.shape
    assert np.allclose((S * weights[:, None]).T @ dual, np.eye(4),
                       atol=1e-10)


def test_dual_spans_the_basis():
    rng = np.random.default_rng(5)
    S = rng.random((30, 3))
    dual = compute_dual(S)
    coefficients, *_ = np.linalg.lstsq(S, dual, rcond=None)
    assert np.allclose(S @ coefficients, dual, atol=1e-10)


def test_degenerate_basis():
    column = np.linspace(0, 1, 20)
    S = np.column_stack([column, 2 * column])
    with pytest.raises(DegenerateBasisError, match="degenerate basis"):
        compute_dual(S)


def test_invalid_shapes():
    with pytest.raises(DegenerateBasisError):
        compute_dual(np.ones((2, 3)))

    with pytest.raises(DegenerateBasisError):
        compute_dual(np.ones(10))


def test_dual_of_constant_column():
    dual = compute_dual(np.ones((501, 1)))
    assert dual.shape == (501, 1)
    assert np.allclose(dual, 1 / 501, rtol=1e-12, atol=0)


def test_dual_scales_inversely_with_columns():
    rng = np.random.default_rng(11)
    S = rng.random((40, 3))
    weights = np.full(40, 0.5)

    scaled = S.copy()
    scaled[:, 1] *= 4.0

    dual = compute_dual(S, weights)
    dual_scaled = compute_dual(scaled, weights)

    assert np.allclose(dual_scaled[:, 1], dual[:, 1] / 4.0, atol=1e-12)
    assert np.allclose(dual_scaled[:, [0, 2]], dual[:, [0, 2]], atol=1e-12)
