"""Third-order tensors under the t-product.

Tensors are plain ``(n1, n2, n3)`` float64 arrays; ``A[:, :, k]`` is the
k-th frontal slice and ``A[i, j, :]`` a tube.
"""

import numpy as np

from ._parallel import slice_map
from ._validation import check_int, check_tensor3
from .exceptions import ParameterError, ShapeError
from .fourier import fft3, from_half_slices, half_slice, ifft3, n_half


def _check_conformal(A, B):
    if A.shape[1] != B.shape[0] or A.shape[2] != B.shape[2]:
        raise ShapeError(
            f"t-product of {A.shape} and {B.shape}: need A.shape[1] == "
            "B.shape[0] and equal depth"
        )


def tprod(A, B):
    """t-product ``A * B`` computed slice-wise in the Fourier domain."""
    A = check_tensor3(A, "A")
    B = check_tensor3(B, "B")
    _check_conformal(A, B)
    Ahat, Bhat = fft3(A), fft3(B)
    n3 = A.shape[2]
    slices = slice_map(
        lambda i: half_slice(Ahat, i) @ half_slice(Bhat, i), range(n_half(n3))
    )
    return ifft3(from_half_slices(slices, n3))


def block_circulant(A):
    """The ``(n1*n3, n2*n3)`` block-circulant matrix of the frontal slices."""
    n1, n2, n3 = A.shape
    C = np.zeros((n1 * n3, n2 * n3))
    for r in range(n3):
        for c in range(n3):
            C[r * n1:(r + 1) * n1, c * n2:(c + 1) * n2] = A[:, :, (r - c) % n3]
    return C


def unfold(B):
    """Stack the frontal slices vertically."""
    return np.concatenate([B[:, :, k] for k in range(B.shape[2])], axis=0)


def fold(M, n1, n3):
    return np.stack([M[k * n1:(k + 1) * n1] for k in range(n3)], axis=2)


def tprod_bruteforce(A, B):
    """t-product via the explicit block-circulant matrix (test oracle)."""
    A = check_tensor3(A, "A")
    B = check_tensor3(B, "B")
    _check_conformal(A, B)
    return fold(block_circulant(A) @ unfold(B), A.shape[0], A.shape[2])


def conj_transpose(A):
    """Transpose each frontal slice and reverse the order of slices 2..n3."""
    A = check_tensor3(A)
    order = [0] + list(range(A.shape[2] - 1, 0, -1))
    return np.ascontiguousarray(A.transpose(1, 0, 2)[:, :, order])


def identity(n, n3):
    n = check_int(n, "n", low=1)
    n3 = check_int(n3, "n3", low=1)
    eye = np.zeros((n, n, n3))
    eye[:, :, 0] = np.eye(n)
    return eye


def tensor_norm(A, which="frobenius"):
    """Tensor Frobenius norm, or spectral norm (largest Fourier-slice singular value)."""
    A = check_tensor3(A)
    if which in ("frobenius", "fro", "F"):
        return float(np.linalg.norm(A.ravel()))
    if which in ("spectral", 2, "2"):
        Ahat = fft3(A)
        return max(
            float(np.linalg.norm(half_slice(Ahat, i), 2)) for i in range(n_half(A.shape[2]))
        )
    raise ParameterError(f"unknown norm {which!r}")


def tensor_nuclear_norm(A):
    """``(1/n3) * sum_k ||Ahat^(k)||_*``."""
    A = check_tensor3(A)
    Ahat = fft3(A)
    total = sum(
        np.linalg.svd(Ahat[:, :, k], compute_uv=False).sum() for k in range(A.shape[2])
    )
    return float(total) / A.shape[2]


def is_f_diagonal(S, atol=0.0):
    S = np.asarray(S)
    off = S.copy()
    m = min(S.shape[0], S.shape[1])
    off[np.arange(m), np.arange(m), :] = 0
    return bool(np.all(np.abs(off) <= atol))


def f_diagonal(diagonals):
    """Build an f-diagonal tensor from an ``(r, n3)`` array of tube fibers."""
    diagonals = np.asarray(diagonals)
    r, n3 = diagonals.shape
    S = np.zeros((r, r, n3), dtype=diagonals.dtype)
    S[np.arange(r), np.arange(r), :] = diagonals
    return S
