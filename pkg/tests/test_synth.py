import numpy as np
import pytest

from tubal.fourier import fft3, symmetry_residual
from tubal.synth import (low_tubal_rank, random_orthogonal, random_unitary, sparse_corruption,
                         tensor_I, tensor_I_spectrum, tensor_II)
from tubal.tsvd import exact_multirank, fourier_singular_values


def test_random_factors(rng):
    Q = random_orthogonal(5, rng)
    np.testing.assert_allclose(Q.T @ Q, np.eye(5), atol=1e-12)
    U = random_unitary(4, rng)
    np.testing.assert_allclose(U.conj().T @ U, np.eye(4), atol=1e-12)


@pytest.mark.parametrize("n3", [5, 6])
def test_tensor_I_spectrum_every_slice(n3):
    A = tensor_I(30, 30, n3, seed=1)
    assert np.isrealobj(A)
    sv = fourier_singular_values(A)
    np.testing.assert_allclose(sv, np.tile(tensor_I_spectrum(30), (n3, 1)), rtol=1e-10, atol=1e-14)


def test_tensor_I_requires_square():
    with pytest.raises(ValueError):
        tensor_I(20, 21, 3)


def test_tensor_II_spatial_spectrum():
    A = tensor_II(10, 10, 3, seed=0)
    for k in range(3):
        np.testing.assert_allclose(np.linalg.svd(A[:, :, k], compute_uv=False),
                                   2.0 ** -np.arange(1, 11), rtol=1e-10)


def test_low_tubal_rank():
    A = low_tubal_rank(12, 9, 4, 3, seed=0)
    assert exact_multirank(A, 1e-8 * np.abs(A).max())[1] == 3
    B = low_tubal_rank(12, 9, 4, 2, seed=0, spectrum=np.array([2.0, 1.0]))
    np.testing.assert_allclose(fourier_singular_values(B)[:, :2], [[2.0, 1.0]] * 4, rtol=1e-10)
    assert symmetry_residual(fft3(B)) < 1e-12
    assert low_tubal_rank(3, 3, 2, 0).sum() == 0


def test_sparse_corruption():
    E = sparse_corruption((50, 50, 10), 0.05, magnitude=2.0, seed=3)
    assert set(np.unique(E)) <= {-2.0, 0.0, 2.0}
    assert abs(np.mean(E != 0) - 0.05) < 0.01
    np.testing.assert_array_equal(E, sparse_corruption((50, 50, 10), 0.05, 2.0, seed=3))
