import math

import numpy as np
import pytest

from wave_adr.core.schemas.config import ChebyParams
from wave_adr.operators.spectral import (
    chebyshev_polynomial,
    jacobi_omega0,
    jacobi_omega1,
    jacobi_spectrum,
    model_eigenpairs,
    model_eigenvalues,
    model_matrix,
)
from wave_adr.smoothers.chebyshev import chebyshev_semi_sweep
from wave_adr.smoothers.jacobi import jacobi_sweep

SIZES = [5, 11, 23, 47]
WAVENUMBERS = [0.0, 8.0 * math.pi]


@pytest.mark.parametrize("n", SIZES)
@pytest.mark.parametrize("k", WAVENUMBERS)
def test_eigenpairs_match_dense_solver(n, k):
    a = model_matrix(n, k)
    scale = np.abs(a).max()
    pairs = model_eigenpairs(n, k)
    assert len(pairs) == n
    for lam, v in pairs:
        assert np.max(np.abs(a @ v - lam * v)) <= 1e-10 * scale * np.abs(v).max()
    dense = np.linalg.eigvalsh(a)
    assert np.allclose(np.sort([lam for lam, _ in pairs]), dense, rtol=0, atol=1e-10 * scale)


def test_eigenvalues_shift_by_k2():
    assert np.allclose(model_eigenvalues(11, 3.0), model_eigenvalues(11, 0.0) - 9.0)


@pytest.mark.parametrize("n", SIZES)
@pytest.mark.parametrize("k", WAVENUMBERS)
@pytest.mark.parametrize("omega", [0.5, 2.0 / 3.0, 1.0])
def test_jacobi_spectrum_matches_dense_iteration_matrix(n, k, omega):
    a = model_matrix(n, k)
    d = np.diag(a)
    iteration = np.eye(n) - omega * a / d[:, None]
    dense = np.sort(np.linalg.eigvals(iteration).real)
    assert np.allclose(np.sort(jacobi_spectrum(n, k, omega)), dense, atol=1e-10)


def test_jacobi_sweep_matches_iteration_matrix(dense_operator, rng):
    n, k, omega = 11, 8.0 * math.pi, 0.6
    a = model_matrix(n, k)
    op = dense_operator(a)
    e0 = rng.standard_normal(n)
    # g = 0: the iterate is the propagated error
    e1 = jacobi_sweep(op, np.zeros(n), e0, omega, steps=3)
    m = np.eye(n) - omega * a / np.diag(a)[:, None]
    assert np.allclose(e1, np.linalg.matrix_power(m, 3) @ e0, atol=1e-10)


def test_jacobi_weights():
    h = 1.0 / 32
    assert jacobi_omega0(0.0, h) == pytest.approx(2.0 / 3.0)
    assert jacobi_omega0(math.sqrt(3.0) / h, h) is None
    k_unit = 1.0 / h
    assert jacobi_omega0(k_unit, h) == pytest.approx(0.5)
    assert jacobi_omega1(0.0, h) == pytest.approx(1.0 / math.sin(math.pi * h / 2) ** 2)


def test_jacobi_converges_below_omega1_on_negative_definite_levels():
    # coarse level with k h > 2 sin(pi h / 2): the operator is negative definite
    n, k = 7, 40.0
    h = 1.0 / (n + 1)
    assert np.all(model_eigenvalues(n, k) < 0)
    w1 = jacobi_omega1(k, h)
    assert abs(jacobi_spectrum(n, k, w1)[0]) == pytest.approx(1.0)
    assert np.max(np.abs(jacobi_spectrum(n, k, 0.5 * w1))) < 1.0


def test_negative_eigenvalue_count_matches_dense():
    n, k = 47, 8.0 * math.pi
    dense = np.linalg.eigvalsh(model_matrix(n, k))
    assert np.sum(model_eigenvalues(n, k) < 0) == np.sum(dense < 0)
    lam1 = model_eigenvalues(3, 0.0)[0]
    assert lam1 == pytest.approx(64.0 * math.sin(math.pi / 8) ** 2, abs=1e-10)


@pytest.mark.parametrize("q", [1, 3, 5, 10])
@pytest.mark.parametrize("alpha", [1.2, 4.6, 30.0])
def test_chebyshev_error_map_matches_dense_polynomial(q, alpha, dense_operator, rng):
    n, k = 23, 8.0 * math.pi
    a = model_matrix(n, k).astype(complex) + 5j * np.eye(n)
    op = dense_operator(a)
    normal = a.conj().T @ a
    lam, vecs = np.linalg.eigh(normal)
    params = ChebyParams(alpha=alpha, lambda_max=1.05 * lam.max(), q_steps=q)
    e0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    e1 = chebyshev_semi_sweep(op, np.zeros(n), e0, params)
    p = chebyshev_polynomial(lam, params.inverse_steps())
    expected = vecs @ (p * (vecs.conj().T @ e0))
    assert np.allclose(e1, expected, atol=1e-10 * np.abs(e0).max())


def test_chebyshev_roots_lie_in_window():
    params = ChebyParams(alpha=7.1, lambda_max=100.0, q_steps=5)
    roots = params.inverse_steps()
    assert len(roots) == 5
    assert all(100.0 / 7.1 < r < 100.0 for r in roots)
    assert roots == sorted(roots, reverse=True)
    assert ChebyParams(alpha=2.0, lambda_max=1.0, q_steps=0).inverse_steps() == []
