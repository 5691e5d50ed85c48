"""
Chebyshev semi-iteration on the normal equations A*A u = A*g.

The step sizes 1/beta_q are the roots of the degree-Q Chebyshev polynomial
mapped to the window [lambda_max / alpha, lambda_max], taken in natural order.
"""

import numpy as np
from structlog import get_logger

from wave_adr.core.interfaces.operator import ILevelOperator
from wave_adr.core.schemas.config import ChebyParams

logger = get_logger(__name__)

LAMBDA_SAFETY = 1.05


def chebyshev_semi_sweep(
    op: ILevelOperator, g: np.ndarray, u: np.ndarray, params: ChebyParams
) -> np.ndarray:
    """q_steps iterations u <- u + beta_q (A*g - A*A u); ``u`` is not modified."""
    u = np.array(u, dtype=np.complex128, copy=True)
    if params.q_steps == 0:
        return u
    a_star_g = op.rmatvec(g)
    for root in params.inverse_steps():
        u += (a_star_g - op.rmatvec(op.matvec(u))) / root
    return u


def estimate_lambda_max(op: ILevelOperator, iterations: int = 30, seed: int = 0) -> float:
    """Power iteration on A*A from a seeded complex start, inflated by 5%."""
    rng = np.random.default_rng(seed)
    shape = op.shape
    v = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    v /= np.linalg.norm(v)
    rayleigh = 0.0
    for _ in range(iterations):
        av = op.matvec(v)
        rayleigh = float(np.vdot(av, av).real)
        w = op.rmatvec(av)
        norm = np.linalg.norm(w)
        if norm == 0.0:
            break
        v = w / norm
    estimate = LAMBDA_SAFETY * rayleigh
    logger.debug("lambda_max_estimated", lambda_max=estimate)
    return estimate
