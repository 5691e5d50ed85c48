"""
Core level-operator interface.

Every discrete operator consumed by the smoothers, the cycles and the Krylov
solvers implements this interface, so they stay matrix-free.
"""

from abc import ABC, abstractmethod

import numpy as np
import scipy.sparse as sp

from wave_adr.core.errors import GridMismatchError
from wave_adr.core.fields import ComplexField, Grid2D


class ILevelOperator(ABC):
    """
    Linear operator on the interior nodes of one grid.

    ``matvec``/``rmatvec`` act on raw ``(N, N)`` complex arrays; ``apply``
    wraps them for ComplexField arguments.
    """

    @property
    @abstractmethod
    def grid(self) -> Grid2D:
        """Grid the operator acts on."""
        pass

    @property
    def shape(self) -> tuple[int, int]:
        return self.grid.shape

    @abstractmethod
    def matvec(self, u: np.ndarray) -> np.ndarray:
        """A u."""
        pass

    @abstractmethod
    def rmatvec(self, u: np.ndarray) -> np.ndarray:
        """A^* u (conjugate transpose)."""
        pass

    @abstractmethod
    def diagonal(self) -> np.ndarray:
        """Pointwise diagonal of A, shaped like the grid."""
        pass

    @abstractmethod
    def to_sparse(self) -> sp.csr_matrix:
        """Assembled matrix in lexicographic (row-major) order."""
        pass

    def apply(self, u: ComplexField) -> ComplexField:
        if u.grid != self.grid:
            raise GridMismatchError(
                f"Operator on N={self.grid.n_interior} applied to field on N={u.grid.n_interior}"
            )
        return ComplexField(self.grid, self.matvec(u.values))

    def residual(self, g: np.ndarray, u: np.ndarray) -> np.ndarray:
        return g - self.matvec(u)
