"""
Fixed-length GMRES(m) used as a smoother and as a coarse-level solver.
"""

from typing import Callable

import numpy as np
import scipy.linalg as scla

BREAKDOWN_TOL = 1e-14


def gmres_m(
    apply_op: Callable[[np.ndarray], np.ndarray],
    g: np.ndarray,
    u0: np.ndarray,
    m: int,
) -> np.ndarray:
    """
    m Arnoldi steps (modified Gram-Schmidt) from u0, no restart.

    Minimizes ||g - A u|| over u0 + K_m(A, r0). On a happy breakdown the
    exact solution of the reduced problem is returned early.
    """
    if m < 1:
        raise ValueError(f"GMRES needs m >= 1, got {m}")
    shape = np.shape(g)
    u0 = np.asarray(u0, dtype=np.complex128)
    r0 = (np.asarray(g) - apply_op(u0)).ravel()
    beta = scla.norm(r0)
    if beta == 0.0:
        return u0.copy()

    n = r0.size
    m = min(m, n)
    v = np.zeros((m + 1, n), dtype=np.complex128)
    h = np.zeros((m + 1, m), dtype=np.complex128)
    v[0] = r0 / beta
    steps = m
    for j in range(m):
        w = apply_op(v[j].reshape(shape)).ravel().astype(np.complex128)
        for i in range(j + 1):
            h[i, j] = np.vdot(v[i], w)
            w -= h[i, j] * v[i]
        h[j + 1, j] = scla.norm(w)
        if abs(h[j + 1, j]) <= BREAKDOWN_TOL * beta:
            steps = j + 1
            break
        v[j + 1] = w / h[j + 1, j]

    rhs = np.zeros(steps + 1, dtype=np.complex128)
    rhs[0] = beta
    y = scla.lstsq(h[: steps + 1, :steps], rhs)[0]
    return u0 + (v[:steps].T @ y).reshape(shape)
