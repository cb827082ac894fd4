"""Randomized SVD with a power scheme, and its probabilistic error bounds."""

import math
import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._validation import check_int
from .exceptions import ParameterError
from .linalg import as_generator, gaussian, orth, svd


@dataclass(frozen=True)
class RsvdResult:
    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray
    Q: np.ndarray
    B: np.ndarray
    elapsed: float

    def approximation(self):
        return (self.U * self.sigma) @ self.V.conj().T


def range_finder(M, G, q):
    """Orthonormal basis for ``(M M^H)^q M G``, re-orthonormalized after every product."""
    Q = orth(M @ G)
    for _ in range(q):
        Z = orth(M.conj().T @ Q)
        Q = orth(M @ Z)
    return Q


def rsvd(M, k, p=0, q=0, random_state=None):
    """Rank-``k`` randomized SVD of ``M`` with ``p`` oversampling columns.

    ``q`` power iterations are applied with re-orthonormalization between
    every multiplication by ``M`` or ``M^H``.
    """
    M = np.asarray(M)
    m, n = M.shape
    k = check_int(k, "k", low=1)
    p = check_int(p, "p", low=0)
    q = check_int(q, "q", low=0)
    ell = k + p
    if ell > min(m, n):
        raise ParameterError(f"k + p = {ell} exceeds min(m, n) = {min(m, n)}")
    t0 = time.perf_counter()
    G = gaussian(n, ell, as_generator(random_state))
    Q = range_finder(M, G, q)
    B = Q.conj().T @ M
    Z, sigma, V = svd(B)
    U = Q @ Z[:, :k]
    return RsvdResult(
        U=U, sigma=sigma[:k], V=V[:, :k], Q=Q, B=B, elapsed=time.perf_counter() - t0
    )


def c_delta(n, k, ell, delta):
    """Probabilistic constant bounding ``||G_2 G_1^+||_2`` with probability ``1 - delta``."""
    if not 0 < delta < 1:
        raise ParameterError(f"delta must lie in (0, 1), got {delta}")
    if not (0 <= k <= ell):
        raise ParameterError(f"need 0 <= k <= ell, got k={k}, ell={ell}")
    if n <= k:
        raise ParameterError(f"need n > k, got n={n}, k={k}")
    d = ell - k + 1
    log_term = math.log(2.0 / delta)
    return (
        math.e * math.sqrt(ell) / d
        * (2.0 / delta) ** (1.0 / d)
        * (math.sqrt(n - k) + math.sqrt(ell) + math.sqrt(2.0 * log_term))
    )


class RsvdBounds(NamedTuple):
    fro: float
    spec: float
    sv_rel: float


def _tail(sigma, start):
    return float(np.sum(sigma[start:] ** 2))


def _sigma_at(sigma, j):
    """1-based ``sigma_j``, zero past the end of the spectrum."""
    return float(sigma[j - 1]) if j <= len(sigma) else 0.0


def _gamma(sigma, k, i):
    s_i = _sigma_at(sigma, i)
    if s_i == 0.0:
        raise ParameterError(f"sigma_{i} is zero; gap ratio undefined")
    return _sigma_at(sigma, k + 1) / s_i


def rsvd_bounds(sigma, k, p, q, i, delta=None, n=None):
    """Error bounds for the rank-``i`` projection produced by :func:`rsvd`.

    Returns squared Frobenius and spectral error bounds and the relative
    singular value error bound.  With ``delta`` the bounds hold with
    probability ``1 - delta``; without it they bound the expectation
    (``p >= 2`` required).  ``n`` is the column count of the sketched matrix
    and defaults to ``len(sigma)``.
    """
    sigma = np.asarray(sigma, dtype=float)
    if np.any(np.diff(sigma) > 0):
        raise ParameterError("sigma must be nonincreasing")
    if not 1 <= i <= k:
        raise ParameterError(f"need 1 <= i <= k, got i={i}, k={k}")
    n = len(sigma) if n is None else n
    if delta is None:
        if p < 2:
            raise ParameterError("the expectation bound needs p >= 2")
        c2 = k / (p - 1)
    else:
        c2 = c_delta(n, k, k + p, delta) ** 2
    g = _gamma(sigma, k, i)
    tail_k = _tail(sigma, k)
    excess = g ** (4 * q) * c2 * tail_k
    return RsvdBounds(
        fro=_tail(sigma, i) + excess,
        spec=_sigma_at(sigma, i + 1) ** 2 + excess,
        sv_rel=0.5 * g ** (4 * q + 2) * c2,
    )


def rsvd_bound_hypothesis(sigma, k, p, q, i):
    """Whether the gap condition under which the expectation bounds were derived holds."""
    sigma = np.asarray(sigma, dtype=float)
    s_k1 = _sigma_at(sigma, k + 1)
    if s_k1 == 0.0 or p < 2:
        return s_k1 == 0.0
    g = _gamma(sigma, k, i)
    return bool(g ** (4 * q + 2) * np.sum((sigma[k:] / s_k1) ** 2) < (p - 1) / k)
