import numpy as np
import pytest

from tubal import linalg as LA


def test_orth_orthonormal_and_span(rng):
    M = rng.standard_normal((20, 5)) @ rng.standard_normal((5, 8))
    Q = LA.orth(M)
    assert Q.shape == (20, 5)
    np.testing.assert_allclose(Q.T @ Q, np.eye(5), atol=1e-12)
    np.testing.assert_allclose(Q @ (Q.T @ M), M, atol=1e-10)


def test_orth_zero_matrix():
    assert LA.orth(np.zeros((4, 3))).shape == (4, 0)


def test_orth_complex(rng):
    M = rng.standard_normal((6, 3)) + 1j * rng.standard_normal((6, 3))
    Q = LA.orth(M)
    np.testing.assert_allclose(Q.conj().T @ Q, np.eye(3), atol=1e-12)


def test_project_out_and_orth2(rng):
    Q = LA.orth(rng.standard_normal((10, 3)))
    Y = rng.standard_normal((10, 4))
    P = LA.project_out(Y, Q)
    np.testing.assert_allclose(Q.T @ P, 0, atol=1e-12)
    Q2 = LA.orth2(Y, Q)
    np.testing.assert_allclose(Q.T @ Q2, 0, atol=1e-12)
    np.testing.assert_allclose(Q2.T @ Q2, np.eye(Q2.shape[1]), atol=1e-12)


def test_svd_descending(rng):
    M = rng.standard_normal((5, 7))
    U, s, V = LA.svd(M)
    assert np.all(np.diff(s) <= 0)
    np.testing.assert_allclose((U * s) @ V.conj().T, M, atol=1e-12)


def test_eig_desc(rng):
    X = rng.standard_normal((5, 5))
    V, w = LA.eig_desc(X @ X.T)
    assert np.all(np.diff(w) <= 0)
    np.testing.assert_allclose(V @ np.diag(w) @ V.T, X @ X.T, atol=1e-10)
    with pytest.raises(ValueError):
        LA.eig_desc(X + np.triu(np.ones((5, 5)), 1) * 10)


def test_streams_are_independent_and_reproducible():
    a = LA.stream(3, 1, 2).standard_normal(4)
    b = LA.stream(3, 1, 2).standard_normal(4)
    c = LA.stream(3, 2, 1).standard_normal(4)
    np.testing.assert_array_equal(a, b)
    assert not np.allclose(a, c)
    assert LA.master_seed(5) == LA.master_seed(5)
