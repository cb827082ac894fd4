"""Seeded generators for synthetic test tensors."""

import numpy as np

from ._validation import check_int
from .exceptions import ParameterError
from .fourier import from_half_slices, ifft3, is_self_conjugate, n_half
from .linalg import as_generator, master_seed, stream
from .tensor import tprod


def random_orthogonal(n, rng=None):
    """Haar-distributed ``n x n`` orthogonal matrix (sign-corrected QR of a Gaussian)."""
    n = check_int(n, "n", low=1)
    rng = as_generator(rng)
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    d = np.sign(np.diag(R))
    d[d == 0] = 1.0
    return Q * d


def random_unitary(n, rng=None):
    """Haar-distributed ``n x n`` unitary matrix."""
    n = check_int(n, "n", low=1)
    rng = as_generator(rng)
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def _spectral_slice(n1, n2, s, rng, real):
    """``U diag(s) V^H`` with Haar factors restricted to ``len(s)`` columns."""
    draw = random_orthogonal if real else random_unitary
    U = draw(n1, rng)[:, : len(s)]
    V = draw(n2, rng)[:, : len(s)]
    return (U * s) @ V.conj().T


def tensor_I_spectrum(n):
    """``exp(-k/6)`` for ``k <= 15``, ``exp(-k/2)`` afterwards."""
    k = np.arange(1, n + 1)
    return np.where(k <= 15, np.exp(-k / 6.0), np.exp(-k / 2.0))


def tensor_II_spectrum(n):
    return 2.0 ** -np.arange(1, n + 1)


def tensor_I(n1=100, n2=100, n3=20, seed=0):
    """Tensor whose Fourier slices all have the singular values :func:`tensor_I_spectrum`.

    Fourier slice ``i`` is ``U_i diag(s) V_i^H`` with Haar factors, real
    orthogonal on the slices that must be real and unitary elsewhere; only
    the leading half is drawn and the rest are conjugate mirrors, so the
    spatial tensor is real.
    """
    n1 = check_int(n1, "n1", low=16)
    n2 = check_int(n2, "n2", low=16)
    n3 = check_int(n3, "n3", low=1)
    if n1 != n2:
        raise ParameterError("tensor_I needs n1 == n2")
    s = tensor_I_spectrum(n1)
    root = master_seed(seed)
    slices = [
        _spectral_slice(n1, n2, s, stream(root, i), is_self_conjugate(i, n3))
        for i in range(n_half(n3))
    ]
    return ifft3(from_half_slices(slices, n3))


def tensor_II(n1=100, n2=100, n3=20, seed=0):
    """Tensor whose spatial frontal slices have singular values ``2^-k``."""
    n1 = check_int(n1, "n1", low=1)
    n2 = check_int(n2, "n2", low=1)
    n3 = check_int(n3, "n3", low=1)
    if n1 != n2:
        raise ParameterError("tensor_II needs n1 == n2")
    s = tensor_II_spectrum(n1)
    root = master_seed(seed)
    A = np.empty((n1, n2, n3))
    for k in range(n3):
        rng = stream(root, k)
        U = random_orthogonal(n1, rng)
        V = random_orthogonal(n2, rng)
        A[:, :, k] = (U * s) @ V.T
    return A


def low_tubal_rank(n1, n2, n3, r, seed=0, spectrum=None):
    """Tensor of tubal rank ``r``.

    Without ``spectrum`` this is ``X * Y`` for standard Gaussian ``X``
    (n1, r, n3) and ``Y`` (r, n2, n3).  With ``spectrum`` (length ``r``)
    every Fourier slice gets exactly those singular values.
    """
    n1 = check_int(n1, "n1", low=1)
    n2 = check_int(n2, "n2", low=1)
    n3 = check_int(n3, "n3", low=1)
    r = check_int(r, "r", low=0, high=min(n1, n2))
    if r == 0:
        return np.zeros((n1, n2, n3))
    root = master_seed(seed)
    if spectrum is None:
        rng = stream(root, 0)
        return tprod(rng.standard_normal((n1, r, n3)), rng.standard_normal((r, n2, n3)))
    s = np.asarray(spectrum, dtype=float)
    if s.shape != (r,):
        raise ParameterError(f"spectrum must have length r={r}")
    slices = [
        _spectral_slice(n1, n2, s, stream(root, i), is_self_conjugate(i, n3))
        for i in range(n_half(n3))
    ]
    return ifft3(from_half_slices(slices, n3))


def sparse_corruption(shape, density, magnitude=1.0, seed=0):
    """Entries are ``+-magnitude`` with probability ``density``, else zero."""
    if not 0.0 <= density <= 1.0:
        raise ParameterError(f"density must lie in [0, 1], got {density}")
    rng = as_generator(seed)
    mask = rng.random(shape) < density
    signs = np.where(rng.random(shape) < 0.5, -1.0, 1.0)
    return np.where(mask, magnitude * signs, 0.0)
