import numpy as np
import pytest

from tubal import fourier as F
from tubal.exceptions import ImaginaryResidualTooLarge


@pytest.mark.parametrize("n3", [1, 2, 5, 6])
def test_mirror_index_and_self_conjugate(n3):
    for i in range(n3):
        assert F.mirror_index(F.mirror_index(i, n3), n3) == i
        assert F.is_self_conjugate(i, n3) == (F.mirror_index(i, n3) == i)
    assert F.n_half(n3) == n3 // 2 + 1


@pytest.mark.parametrize("n3", [1, 4, 7])
def test_fft_roundtrip_real(rng, n3):
    A = rng.standard_normal((3, 4, n3))
    Ahat = F.fft3(A)
    assert F.symmetry_residual(Ahat) < 1e-12
    np.testing.assert_allclose(F.ifft3(Ahat), A, atol=1e-13)


def test_ifft3_rejects_non_symmetric(rng):
    Ahat = rng.standard_normal((2, 2, 4)) + 1j * rng.standard_normal((2, 2, 4))
    with pytest.raises(ImaginaryResidualTooLarge):
        F.ifft3(Ahat)
    assert np.isrealobj(F.ifft3(Ahat, lossy=True))


@pytest.mark.parametrize("n3", [5, 6])
def test_half_slices_rebuild(rng, n3):
    A = rng.standard_normal((3, 2, n3))
    Ahat = F.fft3(A)
    halves = [F.half_slice(Ahat, i) for i in range(F.n_half(n3))]
    for i, h in enumerate(halves):
        assert np.isrealobj(h) == F.is_self_conjugate(i, n3)
    np.testing.assert_allclose(F.from_half_slices(halves, n3), Ahat, atol=1e-12)


def test_mirror_conjugate_modes(rng):
    A = rng.standard_normal((2, 2, 6))
    Ahat = F.fft3(A)
    damaged = Ahat.copy()
    damaged[:, :, 4:] = 0
    np.testing.assert_allclose(F.mirror_conjugate(damaged), Ahat, atol=1e-12)
    noisy = Ahat + 1e-3 * (rng.standard_normal(Ahat.shape) + 1j * rng.standard_normal(Ahat.shape))
    proj = F.mirror_conjugate(noisy, half_filled=False)
    assert F.symmetry_residual(proj) < 1e-12
    np.testing.assert_allclose(F.mirror_conjugate(proj, half_filled=False), proj, atol=1e-14)
