"""Adaptive randomized tubal rank revealing (r-TuRank).

Each of the first ``n3 // 2 + 1`` Fourier slices grows an orthonormal range
basis block by block.  A block is a power-iterated Gaussian sketch of the
deflated slice, refined by Rayleigh-Ritz; growth stops at the first Ritz
value below the threshold.  The remaining slices are conjugate mirrors.
"""

import time
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._parallel import slice_map
from ._validation import check_int, check_positive, check_tensor3
from .exceptions import ParameterError, RankNotRevealed
from .fourier import fft3, from_half_slices, half_slice, ifft3, mirror_index, n_half
from .linalg import master_seed, orth, orth2, project_out, stream, svd
from .rsvd import c_delta
from .tensor import conj_transpose, f_diagonal, tprod


@dataclass
class SliceReveal:
    """Outcome of revealing the numerical range of one Fourier slice."""

    Q: np.ndarray
    ritz_values: np.ndarray  # every Ritz value seen, block after block
    blocks: int
    rho: int  # columns kept from the last block
    capped: bool = False  # stopped by the rank cap, not by the threshold

    @property
    def rank(self):
        return self.Q.shape[1]


def reveal_slice(M, b, tau, q, rng_for_block, max_rank=None):
    """Blocked randomized range finder for a single matrix ``M``.

    ``rng_for_block(j)`` supplies the generator for block ``j`` (1-based).
    Returns a :class:`SliceReveal`; raises :class:`RankNotRevealed` when a
    ``max_rank`` below ``min(M.shape)`` is reached without the threshold
    test firing.
    """
    m, n = M.shape
    full = min(m, n)
    cap = full if max_rank is None else min(max_rank, full)
    Mh = M.conj().T
    Q = np.zeros((m, 0), dtype=M.dtype)
    ritz = []
    j = t = 0
    while True:
        if Q.shape[1] >= cap:
            partial = SliceReveal(Q, np.asarray(ritz), j, t, capped=True)
            if cap < full:
                raise RankNotRevealed(
                    f"rank cap {cap} reached before a Ritz value fell below tau",
                    partial,
                )
            return partial
        j += 1
        width = min(b, full - Q.shape[1])
        G = rng_for_block(j).standard_normal((n, width))
        Y = orth(M @ G)
        for _ in range(q):
            Y = project_out(Y, Q)
            Z = orth(Mh @ Y)
            Y = orth(M @ Z)
        Qt = orth2(project_out(Y, Q), Q)
        Zt, s, _ = svd(Qt.conj().T @ M)
        Qj = Qt @ Zt
        # a sketch that collapsed onto span(Q) contributes zero Ritz values
        s = np.concatenate([s, np.zeros(width - len(s))])
        ritz.extend(s)
        below = np.flatnonzero(s < tau)
        t = int(below[0]) if below.size else width
        Qj = Qj[:, :t]
        if t:
            Q = np.hstack([Q, orth(project_out(Qj, Q))])
        if below.size:
            return SliceReveal(Q, np.asarray(ritz), j, t)


@dataclass
class RankReport:
    """Result of :func:`r_turank`.

    ``bases[i]`` is the range basis of Fourier slice ``i`` (mirror slices
    hold conjugates).  ``estimated_singular_values`` is ``(n3, m)`` with the
    Ritz values of every block in order; ``estimated_singular_tensor`` is the
    matching spatial f-diagonal tensor.
    """

    multirank: np.ndarray
    tubal_rank: int
    bases: list
    estimated_singular_values: np.ndarray
    approximation: np.ndarray
    blocks: np.ndarray
    rho: np.ndarray
    elapsed: float
    params: dict = field(default_factory=dict)

    @property
    def estimated_singular_tensor(self):
        return ifft3(f_diagonal(self.estimated_singular_values.T.astype(complex)))

    def components(self):
        """Bases zero-padded to ``tubal_rank`` columns, as a spatial tensor."""
        n1 = self.approximation.shape[0]
        n3 = len(self.bases)
        nu = max(self.tubal_rank, 1)
        Uhat = np.zeros((n1, nu, n3), dtype=complex)
        for i, Q in enumerate(self.bases):
            Uhat[:, : Q.shape[1], i] = Q
        return ifft3(Uhat)


def r_turank(A, b, tau, q=1, random_state=None, max_rank=None):
    """Reveal the multirank of ``A`` at threshold ``tau`` and approximate it.

    Block ``j`` of slice ``i`` draws its Gaussian matrix from the stream
    ``(seed, i, j)``, so results do not depend on how slices are scheduled.
    """
    A = check_tensor3(A)
    n1, n2, n3 = A.shape
    b = check_int(b, "b", low=1, high=n2)
    tau = check_positive(tau, "tau")
    q = check_int(q, "q", low=0)
    if max_rank is not None:
        max_rank = check_int(max_rank, "max_rank", low=1)
    seed = master_seed(random_state)

    t0 = time.perf_counter()
    Ahat = fft3(A)

    def one_slice(i):
        Ai = half_slice(Ahat, i)
        try:
            rev = reveal_slice(Ai, b, tau, q, lambda j: stream(seed, i, j), max_rank)
        except RankNotRevealed as exc:
            exc.args = (f"slice {i}: {exc.args[0]}",)
            raise
        Q = rev.Q
        return rev, Q @ (Q.conj().T @ Ai)

    parts = slice_map(one_slice, range(n_half(n3)))
    approx = ifft3(from_half_slices([a for _, a in parts], n3))

    revs = [parts[min(i, mirror_index(i, n3))][0] for i in range(n3)]
    bases = [r.Q if i < n_half(n3) else r.Q.conj() for i, r in enumerate(revs)]
    multirank = np.array([r.rank for r in revs])
    width = max(len(r.ritz_values) for r in revs)
    sv = np.zeros((n3, width))
    for i, r in enumerate(revs):
        sv[i, : len(r.ritz_values)] = r.ritz_values
    return RankReport(
        multirank=multirank,
        tubal_rank=int(multirank.max()),
        bases=bases,
        estimated_singular_values=sv,
        approximation=approx,
        blocks=np.array([r.blocks for r in revs]),
        rho=np.array([r.rho for r in revs]),
        elapsed=time.perf_counter() - t0,
        params=dict(b=b, tau=tau, q=q, seed=seed),
    )


def estimated_tube_error(S_est, S_true, j):
    """Relative Euclidean error of the j-th (1-based) singular value tube fiber.

    ``S_est`` and ``S_true`` are spatial f-diagonal tensors.
    """
    S_est = np.asarray(S_est)
    S_true = np.asarray(S_true)
    j = check_int(j, "j", low=1, high=min(S_est.shape[0], S_true.shape[0]))
    s_true = S_true[j - 1, j - 1, :]
    norm = np.linalg.norm(s_true)
    if norm == 0.0:
        raise ParameterError(f"true tube fiber {j} is zero")
    return float(np.linalg.norm(S_est[j - 1, j - 1, :] - s_true) / norm)


class TurankBounds(NamedTuple):
    spec: float
    fro: float
    applicable: bool


def turank_bounds(residual_spectra, rho, b, q, delta, n2=None):
    """Probability ``1 - delta`` bounds on the squared r-TuRank errors.

    ``residual_spectra[i]`` holds the descending singular values of slice
    ``i`` deflated by all blocks but the last; ``rho[i]`` is the number of
    columns kept from that last block.  When a gap ratio is ``>= 1`` the
    bound's hypothesis fails and ``applicable`` is False (the values are
    still the formula's).
    """
    sv = np.asarray(residual_spectra, dtype=float)
    rho = np.asarray(rho, dtype=int)
    n3, r = sv.shape
    if rho.shape != (n3,) or np.any(rho > b) or np.any(rho < 0):
        raise ParameterError("rho must have one entry per slice in [0, b]")
    n2 = r if n2 is None else n2
    c2 = c_delta(n2, b, b, delta) ** 2
    padded = np.hstack([sv, np.zeros((n3, max(0, b + 2 - r)))])
    applicable = True
    spec_terms, fro_terms = [], []
    for i in range(n3):
        p_i = rho[i]
        tail_b = np.sum(sv[i, b:] ** 2)
        if p_i == 0:
            excess = 0.0
        else:
            denom = padded[i, p_i - 1]
            g = padded[i, b] / denom if denom > 0 else np.inf
            if not g < 1:
                applicable = False
            excess = g ** (4 * q) * c2 * tail_b if tail_b > 0 else 0.0
        spec_terms.append(padded[i, p_i] ** 2 + excess)
        fro_terms.append(np.sum(sv[i, p_i:] ** 2) + excess)
    return TurankBounds(float(max(spec_terms)), float(np.mean(fro_terms)), applicable)


def estimated_tube_bound(tube_norm, tensor_spec_norm, gamma_max, eps_max, q, delta, b, n2):
    """Bound on the Euclidean error of an estimated singular value tube fiber.

    ``eps_max`` is the largest subspace deviation of the previously
    accumulated bases; it is not computable by the algorithm and must be
    supplied.
    """
    c2 = c_delta(n2, b, b, delta) ** 2
    t_j = 0.5 * gamma_max ** (4 * q + 2) * c2
    t_eps = (1 + t_j) * eps_max
    return float(np.sqrt(2 * t_j**2 * tube_norm**2 + 2 * t_eps**2 * tensor_spec_norm**2))


class TubalRankRevealer(TransformerMixin, BaseEstimator):
    """Estimator wrapper around :func:`r_turank`.

    After ``fit``, ``transform(X)`` returns coefficients on the revealed
    per-slice bases (zero-padded to the tubal rank) and
    ``inverse_transform`` maps them back, so ``inverse_transform(transform(X))``
    is the projection of ``X`` onto the revealed range.
    """

    def __init__(self, tau=1e-2, block_size=10, n_power_iter=1, random_state=None,
                 max_rank=None):
        self.tau = tau
        self.block_size = block_size
        self.n_power_iter = n_power_iter
        self.random_state = random_state
        self.max_rank = max_rank

    def fit(self, X, y=None):
        X = check_tensor3(X, "X")
        rep = r_turank(X, self.block_size, self.tau, self.n_power_iter,
                       self.random_state, self.max_rank)
        self.report_ = rep
        self.multirank_ = rep.multirank
        self.tubal_rank_ = rep.tubal_rank
        self.approximation_ = rep.approximation
        self.components_ = rep.components()
        self.n_features_in_ = X.shape[0]
        return self

    def transform(self, X):
        check_is_fitted(self)
        return tprod(conj_transpose(self.components_), check_tensor3(X, "X"))

    def inverse_transform(self, Z):
        check_is_fitted(self)
        return tprod(self.components_, check_tensor3(Z, "Z"))
