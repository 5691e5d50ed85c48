"""
Matrix-free damped Helmholtz operator on one hierarchy level.

    A u = (4u - u_W - u_E - u_S - u_N) / h^2
          - omega^2 s^2 u + i omega gamma s^2 u + i gamma_0 u + i beta u

Neighbours outside the interior are zero (Dirichlet frame). gamma_0 is the
pointwise spectral shift shift0 * k^2, beta the constant complex shift used by
the shifted-Laplacian baseline.
"""

import numpy as np
import scipy.sparse as sp

from wave_adr.core.errors import GridMismatchError
from wave_adr.core.fields import ComplexField, Grid2D
from wave_adr.core.hierarchy import Level
from wave_adr.core.interfaces.operator import ILevelOperator
from wave_adr.operators.stencil import shifted_sum


class HelmholtzLevelOp(ILevelOperator):
    """Damped (optionally shifted) Helmholtz operator bound to a hierarchy level."""

    def __init__(self, level: Level, beta: float = 0.0):
        self.level = level
        self.beta = float(beta)
        k2 = level.k2
        self._diag = (
            4.0 / level.h**2
            - k2
            + 1j * level.omega * level.gamma * level.s2
            + 1j * level.shift
            + 1j * self.beta
        ).astype(np.complex128)
        self._diag.setflags(write=False)
        self._off = -1.0 / level.h**2

    @property
    def grid(self) -> Grid2D:
        return self.level.grid

    @property
    def index(self) -> int:
        return self.level.index

    def matvec(self, u: np.ndarray) -> np.ndarray:
        off = self._off
        return self._diag * u + shifted_sum(u, off, off, off, off)

    def rmatvec(self, u: np.ndarray) -> np.ndarray:
        # off-diagonal part is real and symmetric
        off = self._off
        return np.conj(self._diag) * u + shifted_sum(u, off, off, off, off)

    def diagonal(self) -> np.ndarray:
        return self._diag.copy()

    def to_sparse(self) -> sp.csr_matrix:
        n = self.grid.n_interior
        t = sp.diags([1.0, 1.0], [-1, 1], shape=(n, n))
        eye = sp.identity(n)
        neighbours = sp.kron(eye, t) + sp.kron(t, eye)
        return (sp.diags(self._diag.ravel()) + self._off * neighbours).tocsr()

    def with_shift(self, beta: float) -> "HelmholtzLevelOp":
        return HelmholtzLevelOp(self.level, beta)


def apply_helmholtz(op: HelmholtzLevelOp, u: ComplexField) -> ComplexField:
    if u.grid != op.grid:
        raise GridMismatchError(
            f"Level {op.index} has N={op.grid.n_interior}, field has N={u.grid.n_interior}"
        )
    return ComplexField(op.grid, op.matvec(u.values))


def level_operators(levels, beta: float = 0.0) -> list[HelmholtzLevelOp]:
    """One operator per level, finest first."""
    return [HelmholtzLevelOp(level, beta) for level in levels]
