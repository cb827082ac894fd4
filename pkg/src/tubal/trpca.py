"""Tensor singular value thresholding and ADMM for tensor robust PCA."""

import time
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._parallel import slice_map
from ._validation import check_int, check_positive, check_tensor3
from .exceptions import ParameterError
from .fourier import fft3, from_half_slices, half_slice, ifft3, mirror_index, n_half
from .linalg import master_seed, stream, svd
from .turank import reveal_slice


def shrink(x, tau):
    """Soft-thresholding; complex entries have their modulus shrunk."""
    x = np.asarray(x)
    if np.iscomplexobj(x):
        mag = np.abs(x)
        scale = np.maximum(1.0 - tau / np.where(mag > 0, mag, 1.0), 0.0)
        return x * np.where(mag > 0, scale, 0.0)
    return np.sign(x) * np.maximum(np.abs(x) - tau, 0.0)


def soft_threshold(X, tau):
    """Entrywise ``sign(x) * max(|x| - tau, 0)``: the prox of ``tau * ||.||_1``."""
    X = check_tensor3(X, "X")
    tau = check_positive(tau, "tau", strict=False)
    return shrink(X, tau)


def _assemble(parts, n3):
    X = ifft3(from_half_slices([x for x, _ in parts], n3))
    half = [k for _, k in parts]
    return X, np.array([half[min(i, mirror_index(i, n3))] for i in range(n3)])


def _tsvt_exact(Y, tau):
    n3 = Y.shape[2]
    Yhat = fft3(Y)

    def one(i):
        U, s, V = svd(half_slice(Yhat, i))
        s = np.maximum(s - tau, 0.0)
        k = int(np.count_nonzero(s))
        return (U[:, :k] * s[:k]) @ V[:, :k].conj().T, k

    return _assemble(slice_map(one, range(n_half(n3))), n3)


def _tsvt_randomized(Y, tau, b, q, seed, diagonal_only=False):
    n3 = Y.shape[2]
    Yhat = fft3(Y)

    def one(i):
        Yi = half_slice(Yhat, i)
        Q = reveal_slice(Yi, b, tau, q, lambda j: stream(seed, i, j)).Q
        if Q.shape[1] == 0:
            return np.zeros_like(Yi), 0
        # Y_i^H Q = P L^H, hence Q Q^H Y_i = Q L P^H
        P, R = np.linalg.qr(Yi.conj().T @ Q)
        L = R.conj().T
        if diagonal_only:
            Lt = L.copy()
            np.fill_diagonal(Lt, shrink(np.diag(L), tau))
        else:
            Lt = shrink(L, tau)
        k = int(np.count_nonzero(np.any(Lt != 0, axis=1)))
        return Q @ Lt @ P.conj().T, k

    return _assemble(slice_map(one, range(n_half(n3))), n3)


def tsvt_exact(Y, tau):
    """Prox of ``tau * TNN``: shrink every Fourier singular value by ``tau``."""
    Y = check_tensor3(Y, "Y")
    tau = check_positive(tau, "tau", strict=False)
    return _tsvt_exact(Y, tau)[0]


def tsvt_randomized(Y, tau, b=5, q=1, random_state=None, diagonal_only=False):
    """Approximate t-SVT on the ranges revealed at threshold ``tau``.

    Each Fourier slice is written as ``Q L P^H`` (``Q`` from the blocked
    range finder, ``P L^H`` a thin QR of ``Y_i^H Q``) and ``L`` is
    soft-thresholded entrywise; ``diagonal_only`` shrinks just its diagonal.
    """
    Y = check_tensor3(Y, "Y")
    tau = check_positive(tau, "tau")
    b = check_int(b, "b", low=1, high=Y.shape[1])
    q = check_int(q, "q", low=0)
    return _tsvt_randomized(Y, tau, b, q, master_seed(random_state), diagonal_only)[0]


@dataclass
class TrpcaState:
    L: np.ndarray
    E: np.ndarray
    Y: np.ndarray
    mu: float
    lam: float
    rho: float
    mu_max: float
    iterations: int = 0
    converged: bool = False
    residual_history: list = field(default_factory=list)
    rank_history: list = field(default_factory=list)
    mu_history: list = field(default_factory=list)
    elapsed: float = 0.0


def default_lambda(shape):
    n1, n2, n3 = shape
    return 1.0 / np.sqrt(max(n1, n2) * n3)


def video_parameters(h, w, rho0):
    """ADMM settings for background modelling of an ``(h*w) x f x 3`` video tensor.

    Constant penalty ``mu = rho0 * lambda`` with ``lambda = (3hw)^(-1/2)``.
    """
    lam = (3.0 * h * w) ** -0.5
    mu0 = rho0 * lam
    return dict(lam=lam, mu0=mu0, rho=1.0, mu_max=mu0)


def trpca_admm(A, lam=None, mu0=1e-3, rho=1.1, mu_max=1e10, tol=1e-6, max_iters=500,
               inner="exact", b=5, q=1, random_state=None, diagonal_only=False):
    """Split ``A`` into low tubal-rank ``L`` plus sparse ``E``.

    Minimizes ``TNN(L) + lam * ||E||_1`` subject to ``L + E = A`` by ADMM
    started from zero tensors.  Stops when
    ``||L + E - A||_F / ||A||_F < tol`` or after ``max_iters`` iterations;
    non-convergence is reported through ``state.converged``.

    Returns ``(L, E, state)``.
    """
    A = check_tensor3(A)
    lam = default_lambda(A.shape) if lam is None else check_positive(lam, "lam")
    mu = check_positive(mu0, "mu0")
    rho = check_positive(rho, "rho")
    if rho < 1:
        raise ParameterError(f"rho must be >= 1, got {rho}")
    mu_max = check_positive(mu_max, "mu_max")
    tol = check_positive(tol, "tol")
    max_iters = check_int(max_iters, "max_iters", low=1)
    if inner not in ("exact", "randomized"):
        raise ParameterError(f"inner must be 'exact' or 'randomized', got {inner!r}")
    if inner == "randomized":
        b = check_int(b, "b", low=1, high=A.shape[1])
        q = check_int(q, "q", low=0)
        seed = master_seed(random_state)

    t0 = time.perf_counter()
    norm_a = np.linalg.norm(A.ravel())
    denom = norm_a if norm_a > 0 else 1.0
    L = np.zeros_like(A)
    E = np.zeros_like(A)
    Y = np.zeros_like(A)
    state = TrpcaState(L, E, Y, mu, lam, rho, mu_max)
    for it in range(1, max_iters + 1):
        target = A - E - Y / mu
        if inner == "exact":
            L, ranks = _tsvt_exact(target, 1.0 / mu)
        else:
            it_seed = int(stream(seed, it).integers(2**63))
            L, ranks = _tsvt_randomized(target, 1.0 / mu, b, q, it_seed, diagonal_only)
        E = shrink(A - L - Y / mu, lam / mu)
        resid = L + E - A
        Y = Y + mu * resid
        re = float(np.linalg.norm(resid.ravel()) / denom)
        state.residual_history.append(re)
        state.rank_history.append(int(ranks.max()))
        state.mu_history.append(mu)
        state.iterations = it
        mu = min(rho * mu, mu_max)
        if re < tol:
            state.converged = True
            break
    state.L, state.E, state.Y, state.mu = L, E, Y, mu
    state.elapsed = time.perf_counter() - t0
    return L, E, state


class TensorRPCA(BaseEstimator):
    """Low tubal-rank plus sparse decomposition.

    ``fit_transform(X)`` returns the low-rank part; the sparse part is kept
    in ``sparse_``.

    Parameters
    ----------
    lam : float or None
        Weight of the l1 term; ``None`` means ``1 / sqrt(max(n1, n2) * n3)``.
    inner : {'exact', 'randomized'}
        t-SVT used in the L-update.
    """

    def __init__(self, lam=None, mu0=1e-3, rho=1.1, mu_max=1e10, tol=1e-6, max_iter=500,
                 inner="exact", block_size=5, n_power_iter=1, random_state=None):
        self.lam = lam
        self.mu0 = mu0
        self.rho = rho
        self.mu_max = mu_max
        self.tol = tol
        self.max_iter = max_iter
        self.inner = inner
        self.block_size = block_size
        self.n_power_iter = n_power_iter
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_tensor3(X, "X")
        L, E, state = trpca_admm(
            X, self.lam, self.mu0, self.rho, self.mu_max, self.tol, self.max_iter,
            self.inner, self.block_size, self.n_power_iter, self.random_state,
        )
        self.low_rank_ = L
        self.sparse_ = E
        self.state_ = state
        self.n_iter_ = state.iterations
        self.converged_ = state.converged
        self.n_features_in_ = X.shape[0]
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X).low_rank_

    def score(self, X, y=None):
        """Negative relative feasibility residual of the fitted split."""
        check_is_fitted(self)
        X = check_tensor3(X, "X")
        return -float(np.linalg.norm(self.low_rank_ + self.sparse_ - X) / np.linalg.norm(X))
