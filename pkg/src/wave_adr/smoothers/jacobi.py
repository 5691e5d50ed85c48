"""
Damped Jacobi relaxation u <- u + omega D^{-1} (g - A u).
"""

from typing import Optional

import numpy as np
from structlog import get_logger

from wave_adr.core.errors import SmootherError
from wave_adr.core.interfaces.operator import ILevelOperator
from wave_adr.operators.spectral import jacobi_omega0

logger = get_logger(__name__)

ZERO_DIAGONAL_TOL = 1e-12


def inverse_diagonal(op: ILevelOperator, level: Optional[int] = None) -> np.ndarray:
    d = op.diagonal()
    magnitude = np.abs(d)
    if np.any(magnitude <= ZERO_DIAGONAL_TOL * magnitude.max()):
        raise SmootherError("Jacobi diagonal vanishes (k^2 h^2 = 4)", level)
    return 1.0 / d


def jacobi_sweep(
    op: ILevelOperator,
    g: np.ndarray,
    u: np.ndarray,
    omega: float,
    steps: int = 1,
    level: Optional[int] = None,
) -> np.ndarray:
    """Return the iterate after ``steps`` damped Jacobi sweeps; ``u`` is not modified."""
    u = np.array(u, dtype=np.complex128, copy=True)
    if steps <= 0 or omega == 0.0:
        return u
    dinv = inverse_diagonal(op, level)
    for _ in range(steps):
        u += omega * dinv * (g - op.matvec(u))
    return u


def level_jacobi_weight(
    omega: float, s_max: float, h: float, level: Optional[int] = None
) -> float:
    """omega_0 evaluated at the largest wavenumber k = omega * max s on the level."""
    weight = jacobi_omega0(omega * s_max, h)
    if weight is None:
        raise SmootherError("Jacobi weight undefined (k^2 h^2 = 3)", level)
    logger.debug("jacobi_weight", level=level, weight=weight, kh=omega * s_max * h)
    return weight
