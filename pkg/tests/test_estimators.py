import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from tubal import RandomizedTSVD, TensorRPCA, TruncatedTSVD, TubalRankRevealer
from tubal.synth import low_tubal_rank, sparse_corruption

ESTIMATORS = [
    TruncatedTSVD(n_components=3),
    RandomizedTSVD(tau=1e-8, n_components=4, oversampling=2, random_state=0),
    TubalRankRevealer(tau=1e-8, block_size=2, random_state=0),
]


@pytest.fixture
def X():
    return low_tubal_rank(12, 10, 4, 3, seed=2)


@pytest.mark.parametrize("est", ESTIMATORS, ids=lambda e: type(e).__name__)
def test_transformer_roundtrip(est, X):
    est = clone(est)
    Z = est.fit(X).transform(X)
    assert Z.shape[0] in (3, 4) and Z.shape[1:] == X.shape[1:]
    np.testing.assert_allclose(est.inverse_transform(Z), X, atol=1e-9 * np.abs(X).max())


@pytest.mark.parametrize("est", ESTIMATORS + [TensorRPCA()], ids=lambda e: type(e).__name__)
def test_params_and_clone(est):
    params = est.get_params()
    twin = clone(est)
    assert twin.get_params() == params
    twin.set_params(**params)
    with pytest.raises(NotFittedError):
        method = twin.transform if hasattr(twin, "transform") else twin.score
        method(np.ones((3, 3, 2)))


def test_revealer_attributes(X):
    est = TubalRankRevealer(tau=1e-8, block_size=2, random_state=0).fit(X)
    assert est.tubal_rank_ == 3
    np.testing.assert_array_equal(est.multirank_, [3] * 4)


def test_truncated_approximation(X):
    est = TruncatedTSVD(n_components=3).fit(X)
    np.testing.assert_allclose(est.approximation(), X, atol=1e-10)
    assert est.fourier_singular_values_.shape == (4, 3)


def test_rpca_estimator():
    L0 = low_tubal_rank(15, 15, 4, 2, seed=0)
    X = L0 + sparse_corruption(L0.shape, 0.05, np.abs(L0).max(), seed=1)
    est = TensorRPCA(tol=1e-7)
    L = est.fit_transform(X)
    assert est.converged_
    assert np.linalg.norm(L - L0) / np.linalg.norm(L0) < 1e-4
    assert est.score(X) > -1e-6


def test_input_validation():
    with pytest.raises(ValueError):
        TruncatedTSVD(2).fit(np.ones((3, 3)))
    with pytest.raises(ValueError):
        TruncatedTSVD(2).fit(np.full((3, 3, 2), np.nan))
