"""Dense matrix kernels shared by the tensor algorithms."""

import numpy as np
import scipy.linalg

from .exceptions import ParameterError

DROP_RTOL = 1e-12


def svd(M):
    """Thin SVD ``M = U @ diag(sigma) @ Vh``; returns ``(U, sigma, V)``."""
    U, sigma, Vh = np.linalg.svd(np.asarray(M), full_matrices=False)
    return U, sigma, Vh.conj().T


def orth(M):
    """Orthonormal basis for the column span of ``M``.

    Pivoted QR; trailing columns whose pivot falls below ``1e-12 * ||M||_F``
    are dropped, so rank-deficient input yields fewer columns.  Columns are
    phase-fixed so that ``R`` has a positive real diagonal.
    """
    M = np.asarray(M)
    if M.shape[1] == 0:
        return M.copy()
    scale = np.linalg.norm(M)
    if scale == 0.0:
        return np.zeros((M.shape[0], 0), dtype=M.dtype)
    Q, R, _ = scipy.linalg.qr(M, mode="economic", pivoting=True)
    d = np.diag(R)
    keep = int(np.count_nonzero(np.abs(d) > DROP_RTOL * scale))
    Q = Q[:, :keep]
    d = d[:keep]
    phase = d / np.abs(d)
    return Q * phase.conj()


def project_out(Y, Q):
    """``Y - Q (Q^H Y)``; a no-op for an empty basis."""
    if Q is None or Q.shape[1] == 0:
        return Y
    return Y - Q @ (Q.conj().T @ Y)


def orth2(Y, Q):
    """Twice-orthogonalize ``Y`` against the orthonormal columns of ``Q``."""
    Y = project_out(np.asarray(Y), Q)
    Y = orth(Y)
    return project_out(Y, Q)


def eig_desc(M, atol=1e-12):
    """Eigenpairs of a Hermitian matrix with eigenvalues in descending order."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ParameterError("eig_desc needs a square matrix")
    if np.linalg.norm(M - M.conj().T) > atol * max(np.linalg.norm(M), 1.0):
        raise ParameterError("eig_desc needs a Hermitian matrix")
    d, V = np.linalg.eigh(M)
    return V[:, ::-1], d[::-1]


def stream(seed, *keys):
    """Independent generator for ``(seed, *keys)``.

    Streams for different key tuples never depend on call order, which keeps
    slice-parallel code deterministic.
    """
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, keys)]))


def master_seed(random_state):
    """Reduce an int / Generator / None to an integer master seed."""
    if random_state is None:
        return int(np.random.SeedSequence().entropy % (2**63))
    if isinstance(random_state, np.random.Generator):
        return int(random_state.integers(2**63))
    if isinstance(random_state, np.random.RandomState):
        return int(random_state.randint(2**31))
    return int(random_state)


def as_generator(random_state):
    if isinstance(random_state, np.random.Generator):
        return random_state
    return np.random.default_rng(random_state)


def gaussian(rows, cols, rng):
    """Real standard normal ``rows x cols`` matrix drawn from ``rng``."""
    return as_generator(rng).standard_normal((rows, cols))
