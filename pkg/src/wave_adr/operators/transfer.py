"""
Intergrid transfer for the (N - 1) / 2 hierarchy.

Coarse node I coincides with fine node 2I + 1. Restriction is full weighting
with (1/16)[1 2 1; 2 4 2; 1 2 1], prolongation the stride-2 transpose with
(1/4)[1 2 1; 2 4 2; 1 2 1], so P = 4 R^T.
"""

import numpy as np

from wave_adr.core.errors import GridMismatchError
from wave_adr.core.fields import ComplexField, Grid2D


def restrict_array(fine: np.ndarray) -> np.ndarray:
    n = fine.shape[0]
    if fine.ndim != 2 or fine.shape[1] != n or n % 2 == 0 or n < 3:
        raise GridMismatchError(f"Cannot restrict an array of shape {fine.shape}")
    t = fine[:, 0:-2:2] + 2.0 * fine[:, 1:-1:2] + fine[:, 2::2]
    return (t[0:-2:2, :] + 2.0 * t[1:-1:2, :] + t[2::2, :]) / 16.0


def prolong_array(coarse: np.ndarray) -> np.ndarray:
    nc = coarse.shape[0]
    if coarse.ndim != 2 or coarse.shape[1] != nc:
        raise GridMismatchError(f"Cannot prolong an array of shape {coarse.shape}")
    nf = 2 * nc + 1
    t = np.zeros((nc, nf), dtype=np.result_type(coarse, np.float64))
    t[:, 1::2] = coarse
    t[:, 0:-2:2] += 0.5 * coarse
    t[:, 2::2] += 0.5 * coarse
    fine = np.zeros((nf, nf), dtype=t.dtype)
    fine[1::2, :] = t
    fine[0:-2:2, :] += 0.5 * t
    fine[2::2, :] += 0.5 * t
    return fine


def inject_array(fine: np.ndarray) -> np.ndarray:
    """Sample at the coincident coarse nodes."""
    return fine[1::2, 1::2][: (fine.shape[0] - 1) // 2, : (fine.shape[1] - 1) // 2]


def restrict(r: ComplexField) -> ComplexField:
    return ComplexField(r.grid.coarsen(), restrict_array(r.values))


def prolong(e_c: ComplexField, fine: Grid2D) -> ComplexField:
    if fine.coarsening_steps(e_c.grid) != 1:
        raise GridMismatchError(
            f"N={e_c.grid.n_interior} is not the coarse grid of N={fine.n_interior}"
        )
    return ComplexField(fine, prolong_array(e_c.values))
