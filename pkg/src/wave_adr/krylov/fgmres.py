"""
Restarted flexible GMRES in complex arithmetic.

Right preconditioning with the preconditioned vectors z_j = M_j^{-1} v_j kept
per restart cycle, so the preconditioner may vary between applications.
Modified Gram-Schmidt, complex Givens rotations on the Hessenberg matrix.
"""

from typing import Callable, Optional

import numpy as np
import scipy.linalg as scla
from structlog import get_logger

from wave_adr.core.schemas.config import FgmresConfig
from wave_adr.io.report import SolveReport

logger = get_logger(__name__)

Operator = Callable[[np.ndarray], np.ndarray]

BREAKDOWN_TOL = 1e-14


def _givens(a: complex, b: complex) -> tuple[float, complex]:
    """(c, s) with [[c, s], [-conj(s), c]] [a, b]^T = [rho, 0]^T."""
    r = float(np.hypot(abs(a), abs(b)))
    if r == 0.0:
        return 1.0, 0.0
    if a == 0:
        return 0.0, complex(np.conj(b) / abs(b))
    return abs(a) / r, (a / abs(a)) * np.conj(b) / r


def fgmres(
    apply_A: Operator,
    apply_precond: Optional[Operator],
    g: np.ndarray,
    cfg: FgmresConfig = FgmresConfig(),
    method: str = "fgmres",
) -> tuple[np.ndarray, SolveReport]:
    """
    Solve A u = g from u = 0.

    Args:
        apply_A: u -> A u on grid-shaped arrays
        apply_precond: r -> M^{-1} r, None for plain restarted GMRES
        g: right-hand side
        cfg: restart length, relative tolerance and iteration cap

    Returns:
        The final iterate and a report whose history starts at 1.0 and ends
        with the true relative residual. Hitting ``max_iter`` is reported
        through ``converged=False``.
    """
    precond = apply_precond or (lambda r: r)
    g = np.asarray(g, dtype=np.complex128)
    shape = g.shape
    u = np.zeros_like(g)
    norm_g = float(np.linalg.norm(g))
    report = SolveReport(history=[1.0], tol=cfg.tol, method=method)
    if norm_g == 0.0:
        report.history = [0.0]
        report.converged = True
        return u, report

    m = cfg.restart
    total = 0
    r = g.copy()
    beta = norm_g
    while total < cfg.max_iter:
        v = [r.ravel() / beta]
        z = []
        h = np.zeros((m + 1, m), dtype=np.complex128)
        cs = np.zeros(m)
        sn = np.zeros(m, dtype=np.complex128)
        e = np.zeros(m + 1, dtype=np.complex128)
        e[0] = beta
        k = 0
        for j in range(m):
            zj = np.asarray(precond(v[j].reshape(shape)), dtype=np.complex128)
            z.append(zj.ravel())
            w = np.asarray(apply_A(zj), dtype=np.complex128).ravel()
            for i in range(j + 1):
                h[i, j] = np.vdot(v[i], w)
                w = w - h[i, j] * v[i]
            h[j + 1, j] = np.linalg.norm(w)
            breakdown = abs(h[j + 1, j]) <= BREAKDOWN_TOL * beta
            if not breakdown:
                v.append(w / h[j + 1, j])

            for i in range(j):
                hi, hn = h[i, j], h[i + 1, j]
                h[i, j] = cs[i] * hi + sn[i] * hn
                h[i + 1, j] = -np.conj(sn[i]) * hi + cs[i] * hn
            cs[j], sn[j] = _givens(h[j, j], h[j + 1, j])
            h[j, j] = cs[j] * h[j, j] + sn[j] * h[j + 1, j]
            h[j + 1, j] = 0.0
            e[j + 1] = -np.conj(sn[j]) * e[j]
            e[j] = cs[j] * e[j]

            k = j + 1
            total += 1
            relres = abs(e[j + 1]) / norm_g
            report.history.append(float(relres))
            logger.debug("fgmres_iteration", iteration=total, relres=float(relres))
            if relres < cfg.tol or breakdown or total >= cfg.max_iter:
                break

        y = scla.solve_triangular(h[:k, :k], e[:k])
        u = u + (np.stack(z[:k], axis=1) @ y).reshape(shape)
        r = g - apply_A(u)
        beta = float(np.linalg.norm(r))
        report.history[-1] = beta / norm_g
        if report.history[-1] < cfg.tol or not np.isfinite(beta) or beta == 0.0:
            break

    report.iterations = total
    report.converged = bool(report.history[-1] < cfg.tol)
    if report.converged:
        logger.info("fgmres_converged", method=method, iterations=total, relres=report.history[-1])
    else:
        logger.warning(
            "fgmres_not_converged", method=method, iterations=total, relres=report.history[-1]
        )
    return u, report
