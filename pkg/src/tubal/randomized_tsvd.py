"""Randomized t-SVD with a fixed truncation size and a singular value threshold."""

import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._parallel import slice_map
from ._validation import check_int, check_positive, check_tensor3
from .exceptions import ParameterError
from .fourier import fft3, from_half_slices, half_slice, ifft3, mirror_index, n_half
from .linalg import gaussian, master_seed, stream, svd
from .rsvd import c_delta, range_finder
from .tensor import conj_transpose, tprod
from .tsvd import TSVDFactors


@dataclass(frozen=True)
class FixedRtsvdResult:
    factors: TSVDFactors
    approximation: np.ndarray
    multirank: np.ndarray
    tubal_rank: int
    elapsed: float


def rtsvd_fixed(A, tau, K, p=5, q=1, random_state=None):
    """Randomized truncated t-SVD with ``K`` terms, thresholded at ``tau``.

    One real Gaussian test matrix of width ``K + p`` is shared by all Fourier
    slices.  Each slice keeps its leading ``K`` Ritz triplets; the diagonal
    entries below ``tau`` are zeroed, and their count gives the multirank.
    """
    A = check_tensor3(A)
    n1, n2, n3 = A.shape
    tau = check_positive(tau, "tau")
    K = check_int(K, "K", low=1)
    p = check_int(p, "p", low=0)
    q = check_int(q, "q", low=0)
    if K >= min(n1, n2):
        raise ParameterError(f"K must be < min(n1, n2) = {min(n1, n2)}, got {K}")
    if K + p > n2:
        raise ParameterError(f"K + p = {K + p} exceeds n2 = {n2}")

    t0 = time.perf_counter()
    Ahat = fft3(A)
    G = gaussian(n2, K + p, stream(master_seed(random_state)))

    def one_slice(i):
        Ai = half_slice(Ahat, i)
        Q = range_finder(Ai, G, q)
        Z, s, V = svd(Q.conj().T @ Ai)
        U = (Q @ Z)[:, :K]
        V = V[:, :K]
        s = s[:K]
        # orth may return fewer than K columns on rank-deficient slices
        pad = K - U.shape[1]
        if pad:
            U = np.pad(U, ((0, 0), (0, pad)))
            V = np.pad(V, ((0, 0), (0, pad)))
            s = np.pad(s, (0, pad))
        k = int(np.count_nonzero(s >= tau))
        d = np.where(np.arange(K) < k, s, 0.0)
        return U, np.diag(d), V, k

    parts = slice_map(one_slice, range(n_half(n3)))
    Uhat = from_half_slices([u for u, _, _, _ in parts], n3)
    Shat = from_half_slices([s for _, s, _, _ in parts], n3)
    Vhat = from_half_slices([v for _, _, v, _ in parts], n3)
    half_ranks = [k for _, _, _, k in parts]
    multirank = np.array([half_ranks[min(i, mirror_index(i, n3))] for i in range(n3)])

    approx_hat = np.einsum("ark,rrk,brk->abk", Uhat, Shat, Vhat.conj(), optimize=True)
    factors = TSVDFactors(ifft3(Uhat), ifft3(Shat), ifft3(Vhat))
    return FixedRtsvdResult(
        factors=factors,
        approximation=ifft3(approx_hat),
        multirank=multirank,
        tubal_rank=int(multirank.max()),
        elapsed=time.perf_counter() - t0,
    )


class FixedRtsvdBounds(NamedTuple):
    spec: float
    fro: float
    tube: np.ndarray


def fixed_rtsvd_bounds(spectra, multirank, K, p, q, delta, n2=None):
    """Probability ``1 - delta`` bounds for :func:`rtsvd_fixed`.

    ``spectra`` is ``(n3, r)``: descending Fourier singular values per slice.
    ``spec`` and ``fro`` bound the squared spectral and Frobenius errors;
    ``tube[j-1]`` bounds the Euclidean error of the j-th singular tube fiber
    for ``j = 1..max(multirank)``.
    """
    sv = np.asarray(spectra, dtype=float)
    k = np.asarray(multirank, dtype=int)
    n3, r = sv.shape
    if k.shape != (n3,):
        raise ParameterError("multirank length must match the number of slices")
    if np.any(k > K) or np.any(k < 0):
        raise ParameterError("multirank entries must lie in [0, K]")
    n2 = r if n2 is None else n2
    c2 = c_delta(n2, K, K + p, delta) ** 2
    padded = np.hstack([sv, np.zeros((n3, max(0, K + 2 - r)))])
    s_K1 = padded[:, K]
    tail_K = np.sum(sv[:, K:] ** 2, axis=1)

    spec_terms, fro_terms = [], []
    for i in range(n3):
        ki = k[i]
        if ki == 0:
            # nothing kept: the error is exactly the whole slice
            excess = 0.0
        else:
            s_ki = padded[i, ki - 1]
            if s_ki == 0.0:
                raise ParameterError(f"slice {i}: sigma_{ki} is zero; gap ratio undefined")
            excess = (s_K1[i] / s_ki) ** (4 * q) * c2 * tail_K[i]
        spec_terms.append(padded[i, ki] ** 2 + excess)
        fro_terms.append(np.sum(sv[i, ki:] ** 2) + excess)

    nu = int(k.max())
    tube = np.zeros(nu)
    for j in range(1, nu + 1):
        col = padded[:, j - 1]
        if np.any(col == 0.0):
            raise ParameterError(f"sigma_{j} vanishes on some slice; gap ratio undefined")
        g_max = np.max(s_K1 / col)
        tube[j - 1] = 0.5 * g_max ** (4 * q + 2) * c2 * np.sqrt(np.mean(col**2))
    return FixedRtsvdBounds(spec=float(max(spec_terms)), fro=float(np.mean(fro_terms)), tube=tube)


class RandomizedTSVD(TransformerMixin, BaseEstimator):
    """Estimator wrapper around :func:`rtsvd_fixed`.

    ``transform`` projects onto the learned tubal range (coefficients
    ``U^T * X``); ``inverse_transform`` maps back.
    """

    def __init__(self, tau=1e-2, n_components=10, oversampling=5, n_power_iter=1,
                 random_state=None):
        self.tau = tau
        self.n_components = n_components
        self.oversampling = oversampling
        self.n_power_iter = n_power_iter
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_tensor3(X, "X")
        res = rtsvd_fixed(X, self.tau, self.n_components, self.oversampling,
                          self.n_power_iter, self.random_state)
        self.result_ = res
        self.components_ = res.factors.U
        self.multirank_ = res.multirank
        self.tubal_rank_ = res.tubal_rank
        self.approximation_ = res.approximation
        self.n_features_in_ = X.shape[0]
        return self

    def transform(self, X):
        check_is_fitted(self)
        return tprod(conj_transpose(self.components_), check_tensor3(X, "X"))

    def inverse_transform(self, Z):
        check_is_fitted(self)
        return tprod(self.components_, check_tensor3(Z, "Z"))
