"""Mode-3 DFT between real tensors and their conjugate-symmetric spectra.

The forward transform is unnormalized, the inverse carries ``1/n3``
(``numpy.fft`` convention).  Slices are indexed from 0 here, so the mirror
partner of slice ``i`` is ``(n3 - i) % n3``.
"""

import numpy as np

from ._validation import check_tensor3
from .exceptions import ImaginaryResidualTooLarge

IMAG_RTOL = 1e-10
ABS_FLOOR = 1e-12


def n_half(n3):
    """Number of leading Fourier slices that determine the rest."""
    return n3 // 2 + 1


def mirror_index(i, n3):
    return (n3 - i) % n3


def is_self_conjugate(i, n3):
    """True for the slices that must be real (DC and, for even n3, Nyquist)."""
    return i == 0 or 2 * i == n3


def fft3(A):
    """DFT of every tube ``A[i, j, :]``."""
    A = check_tensor3(A)
    return np.fft.fft(A, axis=2)


def ifft3(Ahat, lossy=False):
    """Inverse DFT along the third axis, returning a real tensor.

    Raises ImaginaryResidualTooLarge when the imaginary part of the result
    exceeds ``1e-10 * ||Ahat||_F`` unless ``lossy`` is set, in which case
    it is silently dropped.
    """
    Ahat = check_tensor3(Ahat, "Ahat", allow_complex=True)
    X = np.fft.ifft(Ahat, axis=2)
    if not lossy:
        resid = np.linalg.norm(X.imag.ravel())
        tol = max(IMAG_RTOL * np.linalg.norm(Ahat.ravel()), ABS_FLOOR)
        if resid > tol:
            raise ImaginaryResidualTooLarge(
                f"imaginary residual {resid:.3e} exceeds {tol:.3e}; "
                "input is not conjugate symmetric"
            )
    return np.ascontiguousarray(X.real)


def mirror_conjugate(Ahat, half_filled=True):
    """Fill slices past ``n_half(n3)`` with conjugates of their mirror slices.

    With ``half_filled=False`` the whole input is taken as meaningful and is
    projected onto the conjugate-symmetric subspace instead (mirror pairs
    averaged, self-conjugate slices made real).
    """
    Ahat = np.array(Ahat, dtype=np.complex128)
    n3 = Ahat.shape[2]
    h = n_half(n3)
    if not half_filled:
        for i in range(h):
            m = mirror_index(i, n3)
            if is_self_conjugate(i, n3):
                Ahat[:, :, i] = Ahat[:, :, i].real
            else:
                Ahat[:, :, i] = 0.5 * (Ahat[:, :, i] + np.conj(Ahat[:, :, m]))
    for i in range(h, n3):
        Ahat[:, :, i] = np.conj(Ahat[:, :, n3 - i])
    return Ahat


def symmetry_residual(Ahat):
    """Largest deviation from conjugate symmetry over all slices."""
    Ahat = np.asarray(Ahat)
    n3 = Ahat.shape[2]
    mirrored = np.conj(Ahat[:, :, [mirror_index(i, n3) for i in range(n3)]])
    return float(np.max(np.abs(Ahat - mirrored), initial=0.0))


def half_slice(Ahat, i):
    """Fourier slice ``i`` as a 2-D array, real-typed when it must be real."""
    S = Ahat[:, :, i]
    if is_self_conjugate(i, Ahat.shape[2]):
        return np.ascontiguousarray(S.real)
    return np.ascontiguousarray(S)


def from_half_slices(slices, n3):
    """Spectral tensor whose first ``n_half(n3)`` slices are ``slices``."""
    n1, n2 = slices[0].shape
    Ahat = np.zeros((n1, n2, n3), dtype=np.complex128)
    for i, S in enumerate(slices):
        Ahat[:, :, i] = S
    return mirror_conjugate(Ahat)
