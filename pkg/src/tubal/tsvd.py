"""Truncated t-SVD, its optimal error, and threshold multirank."""

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._parallel import slice_map
from ._validation import check_int, check_positive, check_tensor3
from .exceptions import ParameterError
from .fourier import fft3, from_half_slices, half_slice, ifft3, mirror_index, n_half
from .linalg import svd
from .tensor import conj_transpose, tprod


@dataclass(frozen=True)
class TSVDFactors:
    """``A ~ U * S * V^T`` with ``U`` (n1, r, n3), ``S`` (r, r, n3), ``V`` (n2, r, n3)."""

    U: np.ndarray
    S: np.ndarray
    V: np.ndarray

    @property
    def rank(self):
        return self.S.shape[0]

    def reconstruct(self):
        return tprod(tprod(self.U, self.S), conj_transpose(self.V))


def fourier_singular_values(A):
    """``(n3, min(n1, n2))`` array; row ``i`` holds the singular values of Fourier slice ``i``."""
    A = check_tensor3(A)
    Ahat = fft3(A)
    n3 = A.shape[2]
    half = slice_map(lambda i: np.linalg.svd(half_slice(Ahat, i), compute_uv=False),
                     range(n_half(n3)))
    return np.stack([half[min(i, mirror_index(i, n3))] for i in range(n3)])


def tsvd_truncated(A, k):
    """k-term truncated t-SVD.

    Only the first ``n3 // 2 + 1`` Fourier slices are factorized; the rest
    follow by conjugate symmetry.
    """
    A = check_tensor3(A)
    n1, n2, n3 = A.shape
    k = check_int(k, "k", low=1, high=min(n1, n2))
    Ahat = fft3(A)

    def factor(i):
        U, s, V = svd(half_slice(Ahat, i))
        return U[:, :k], np.diag(s[:k]), V[:, :k]

    parts = slice_map(factor, range(n_half(n3)))
    U = ifft3(from_half_slices([u for u, _, _ in parts], n3))
    S = ifft3(from_half_slices([s for _, s, _ in parts], n3))
    V = ifft3(from_half_slices([v for _, _, v in parts], n3))
    return TSVDFactors(U, S, V)


def minimal_error(A, k, which="frobenius"):
    """Smallest error attainable by any tensor of tubal rank at most ``k``."""
    A = check_tensor3(A)
    k = check_int(k, "k", low=0, high=min(A.shape[:2]))
    sv = fourier_singular_values(A)
    if which in ("spectral", 2, "2"):
        return float(sv[:, k].max()) if k < sv.shape[1] else 0.0
    if which in ("frobenius", "fro", "F"):
        return float(np.sqrt(np.sum(sv[:, k:] ** 2) / A.shape[2]))
    raise ParameterError(f"unknown norm {which!r}")


def exact_multirank(A, tau):
    """Per-slice count of Fourier singular values ``>= tau``, and its maximum."""
    A = check_tensor3(A)
    tau = check_positive(tau, "tau")
    sv = fourier_singular_values(A)
    multirank = np.count_nonzero(sv >= tau, axis=1)
    return multirank, int(multirank.max())


def singular_tubes(A):
    """Spatial-domain singular value tube fibers, shape ``(min(n1, n2), n3)``."""
    sv = fourier_singular_values(A)
    return np.fft.ifft(sv.T, axis=1).real


class TruncatedTSVD(TransformerMixin, BaseEstimator):
    """Rank-``n_components`` truncated t-SVD as a transformer.

    ``transform`` returns the coefficient tensor ``U^T * X`` and
    ``inverse_transform`` maps coefficients back with ``U * Z``.

    Attributes
    ----------
    components_ : ndarray (n1, n_components, n3)
    singular_tensor_ : ndarray (n_components, n_components, n3)
    right_components_ : ndarray (n2, n_components, n3)
    fourier_singular_values_ : ndarray (n3, n_components)
    """

    def __init__(self, n_components=1):
        self.n_components = n_components

    def fit(self, X, y=None):
        X = check_tensor3(X, "X")
        factors = tsvd_truncated(X, self.n_components)
        self.components_ = factors.U
        self.singular_tensor_ = factors.S
        self.right_components_ = factors.V
        self.fourier_singular_values_ = np.real(
            np.diagonal(fft3(factors.S), axis1=0, axis2=1)
        )
        self.n_features_in_ = X.shape[0]
        return self

    def transform(self, X):
        check_is_fitted(self)
        X = check_tensor3(X, "X")
        return tprod(conj_transpose(self.components_), X)

    def inverse_transform(self, Z):
        check_is_fitted(self)
        return tprod(self.components_, check_tensor3(Z, "Z"))

    def approximation(self):
        check_is_fitted(self)
        return tprod(
            tprod(self.components_, self.singular_tensor_),
            conj_transpose(self.right_components_),
        )

