"""
Closed-form spectral toolbox for the 1D model problem

    (1/h^2) tridiag(-1, 2, -1) u - k^2 u,   h = 1 / (N + 1)

used to place the Jacobi weights and to check the smoothers against dense
oracles.
"""

import math
from typing import Optional

import numpy as np
from structlog import get_logger

logger = get_logger(__name__)

UNDEFINED_TOL = 1e-12


def model_matrix(n: int, k: float) -> np.ndarray:
    """Dense 1D model matrix."""
    h = 1.0 / (n + 1)
    a = (2.0 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)) / h**2
    return a - k**2 * np.eye(n)


def model_eigenvalues(n: int, k: float) -> np.ndarray:
    h = 1.0 / (n + 1)
    j = np.arange(1, n + 1)
    return 4.0 / h**2 * np.sin(j * np.pi * h / 2.0) ** 2 - k**2


def model_eigenpairs(n: int, k: float) -> list[tuple[float, np.ndarray]]:
    """(lambda_j, v_j) for j = 1..N with v_j = sin(i j pi h), i = 1..N."""
    if n < 1:
        raise ValueError(f"N must be positive, got {n}")
    h = 1.0 / (n + 1)
    i = np.arange(1, n + 1)
    lams = model_eigenvalues(n, k)
    return [(float(lams[j - 1]), np.sin(i * j * np.pi * h)) for j in range(1, n + 1)]


def jacobi_omega0(k: float, h: float) -> Optional[float]:
    """Weight (2 - k^2 h^2) / (3 - k^2 h^2); None when the denominator vanishes."""
    kh2 = (k * h) ** 2
    den = 3.0 - kh2
    if abs(den) < UNDEFINED_TOL:
        logger.warning("jacobi_weight_undefined", weight="omega0", kh=k * h)
        return None
    return (2.0 - kh2) / den


def jacobi_omega1(k: float, h: float) -> Optional[float]:
    """Weight (2 - k^2 h^2) / (2 sin^2(pi h / 2) - k^2 h^2 / 2) that annihilates mode j = 1."""
    kh2 = (k * h) ** 2
    den = 2.0 * math.sin(math.pi * h / 2.0) ** 2 - kh2 / 2.0
    if abs(den) < UNDEFINED_TOL:
        logger.warning("jacobi_weight_undefined", weight="omega1", kh=k * h)
        return None
    return (2.0 - kh2) / den


def jacobi_spectrum(n: int, k: float, omega: float) -> np.ndarray:
    """mu_j = 1 - omega (1 - 2 cos(j pi h) / (2 - k^2 h^2)), j = 1..N."""
    h = 1.0 / (n + 1)
    j = np.arange(1, n + 1)
    return 1.0 - omega * (1.0 - 2.0 * np.cos(j * np.pi * h) / (2.0 - (k * h) ** 2))


def chebyshev_polynomial(x: np.ndarray, inverse_steps: list[float]) -> np.ndarray:
    """p(x) = prod_q (1 - x / r_q); error map of the semi-iteration on eigenvalues of A*A."""
    p = np.ones_like(np.asarray(x, dtype=float))
    for root in inverse_steps:
        p = p * (1.0 - np.asarray(x) / root)
    return p
