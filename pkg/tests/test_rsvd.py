import math

import numpy as np
import pytest

from tubal.exceptions import ParameterError
from tubal.rsvd import c_delta, rsvd, rsvd_bound_hypothesis, rsvd_bounds


def _decaying(rng, m, n, sigma):
    U = np.linalg.qr(rng.standard_normal((m, len(sigma))))[0]
    V = np.linalg.qr(rng.standard_normal((n, len(sigma))))[0]
    return (U * sigma) @ V.T


def test_rsvd_exact_on_low_rank(rng):
    M = rng.standard_normal((30, 6)) @ rng.standard_normal((6, 25))
    res = rsvd(M, 6, p=2, q=0, random_state=1)
    np.testing.assert_allclose(res.approximation(), M, atol=1e-10)
    np.testing.assert_allclose(res.sigma, np.linalg.svd(M, compute_uv=False)[:6], rtol=1e-10)
    np.testing.assert_allclose(res.U.T @ res.U, np.eye(6), atol=1e-12)


def test_rsvd_power_iterations_help(rng):
    sigma = 0.8 ** np.arange(40)
    M = _decaying(rng, 60, 50, sigma)
    errs = [np.linalg.norm(M - rsvd(M, 5, 0, q, random_state=3).approximation(), 2)
            for q in (0, 3)]
    assert errs[1] <= errs[0]
    assert errs[1] <= 1.5 * sigma[5]


def test_rsvd_reproducible(rng):
    M = rng.standard_normal((10, 9))
    a = rsvd(M, 3, 2, 1, random_state=7)
    b = rsvd(M, 3, 2, 1, random_state=7)
    np.testing.assert_array_equal(a.U, b.U)


def test_rsvd_rejects_oversized_sketch(rng):
    with pytest.raises(ParameterError):
        rsvd(rng.standard_normal((5, 4)), 3, p=2)


def test_c_delta_closed_form():
    n, k, ell, delta = 100, 10, 10, 0.5
    expected = math.e * math.sqrt(10) * 4 * (math.sqrt(90) + math.sqrt(10) + math.sqrt(2 * math.log(4)))
    assert c_delta(n, k, ell, delta) == pytest.approx(expected, rel=1e-14)
    assert c_delta(n, k, ell, delta) == pytest.approx(492.178, abs=1e-3)
    assert c_delta(100, 10, 15, 0.9) < c_delta(100, 10, 15, 0.1)
    with pytest.raises(ParameterError):
        c_delta(100, 10, 15, 1.0)


def test_rsvd_bounds_formulas():
    sigma = np.array([1.0, 0.5, 0.25, 0.125, 0.0625])
    b = rsvd_bounds(sigma, k=2, p=2, q=1, i=1)
    g = 0.25 / 1.0
    tail_k = 0.25**2 + 0.125**2 + 0.0625**2
    c2 = 2 / 1
    assert b.fro == pytest.approx(0.5**2 + tail_k + g**4 * c2 * tail_k)
    assert b.spec == pytest.approx(0.5**2 + g**4 * c2 * tail_k)
    assert b.sv_rel == pytest.approx(0.5 * g**6 * c2)
    with pytest.raises(ParameterError):
        rsvd_bounds(sigma, k=2, p=1, q=1, i=1)
    with pytest.raises(ParameterError):
        rsvd_bounds(sigma[::-1], k=2, p=2, q=1, i=1)


def test_rsvd_bounds_hold_in_expectation(rng):
    sigma = 0.7 ** np.arange(30)
    M = _decaying(rng, 40, 30, sigma)
    k, p, q = 5, 5, 1
    errs = [np.linalg.norm(M - rsvd(M, k, p, q, random_state=s).approximation()) ** 2
            for s in range(20)]
    assert np.mean(errs) <= rsvd_bounds(sigma, k, p, q, k).fro
    assert rsvd_bound_hypothesis(sigma, k, p, q, k) in (True, False)
