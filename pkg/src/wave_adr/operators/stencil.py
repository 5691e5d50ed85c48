"""
Variable five-point stencil operator.

Each node carries its own coefficients for the center and the four
neighbours; a matvec is the sum of the coefficient fields multiplied by the
zero-padded shifted input. Coefficient ``west[iy, ix]`` multiplies
``u[iy, ix - 1]``, ``south[iy, ix]`` multiplies ``u[iy - 1, ix]``.
"""

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from wave_adr.core.errors import GridMismatchError
from wave_adr.core.fields import Grid2D
from wave_adr.core.interfaces.operator import ILevelOperator

STENCIL_KEYS = ("center", "west", "east", "south", "north")


def shifted_sum(u: np.ndarray, west, east, south, north) -> np.ndarray:
    """Neighbour part of the stencil; scalars or per-node fields are accepted."""
    out = np.zeros(u.shape, dtype=np.complex128)
    out[:, 1:] += _rows(west, slice(None), slice(1, None)) * u[:, :-1]
    out[:, :-1] += _rows(east, slice(None), slice(None, -1)) * u[:, 1:]
    out[1:, :] += _rows(south, slice(1, None), slice(None)) * u[:-1, :]
    out[:-1, :] += _rows(north, slice(None, -1), slice(None)) * u[1:, :]
    return out


def _rows(coef, rows: slice, cols: slice):
    return coef[rows, cols] if np.ndim(coef) == 2 else coef


class StencilOperator(ILevelOperator):
    """Five coefficient fields on one grid."""

    def __init__(self, grid: Grid2D, center, west, east, south, north):
        self._grid = grid
        for key, coef in zip(STENCIL_KEYS, (center, west, east, south, north)):
            coef = np.asarray(coef, dtype=np.complex128)
            if coef.shape != grid.shape:
                raise GridMismatchError(
                    f"Stencil field '{key}' has shape {coef.shape}, grid expects {grid.shape}"
                )
            setattr(self, key, coef)
        self._lu = None

    @property
    def grid(self) -> Grid2D:
        return self._grid

    def coefficients(self) -> dict[str, np.ndarray]:
        return {key: getattr(self, key) for key in STENCIL_KEYS}

    def matvec(self, u: np.ndarray) -> np.ndarray:
        return self.center * u + shifted_sum(u, self.west, self.east, self.south, self.north)

    def rmatvec(self, v: np.ndarray) -> np.ndarray:
        out = np.conj(self.center) * v
        out[:, :-1] += np.conj(self.west[:, 1:]) * v[:, 1:]
        out[:, 1:] += np.conj(self.east[:, :-1]) * v[:, :-1]
        out[:-1, :] += np.conj(self.south[1:, :]) * v[1:, :]
        out[1:, :] += np.conj(self.north[:-1, :]) * v[:-1, :]
        return out

    def diagonal(self) -> np.ndarray:
        return self.center.copy()

    def to_sparse(self) -> sp.csr_matrix:
        n = self._grid.n_interior
        idx = np.arange(n * n).reshape(n, n)
        rows = [idx.ravel()]
        cols = [idx.ravel()]
        vals = [self.center.ravel()]
        links = (
            (self.west, (slice(None), slice(1, None)), -1),
            (self.east, (slice(None), slice(None, -1)), 1),
            (self.south, (slice(1, None), slice(None)), -n),
            (self.north, (slice(None, -1), slice(None)), n),
        )
        for coef, region, offset in links:
            r = idx[region].ravel()
            rows.append(r)
            cols.append(r + offset)
            vals.append(coef[region].ravel())
        return sp.csr_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
            shape=(n * n, n * n),
        )

    def lu_solve(self, f: np.ndarray) -> np.ndarray:
        """Sparse LU solve; the factorization is built on first use and kept."""
        if self._lu is None:
            self._lu = spla.splu(self.to_sparse().tocsc())
        f = np.asarray(f, dtype=np.complex128)
        return self._lu.solve(f.ravel()).reshape(f.shape)

    def __add__(self, other: "StencilOperator") -> "StencilOperator":
        if other.grid != self.grid:
            raise GridMismatchError("Cannot add stencils on different grids")
        return StencilOperator(
            self._grid, *(getattr(self, k) + getattr(other, k) for k in STENCIL_KEYS)
        )

    def scaled(self, factor: complex) -> "StencilOperator":
        return StencilOperator(self._grid, *(factor * getattr(self, k) for k in STENCIL_KEYS))


def laplacian_stencil(grid: Grid2D) -> StencilOperator:
    """Negated five-point Laplacian (4u - neighbours) / h^2 with Dirichlet frame."""
    inv_h2 = 1.0 / grid.h**2
    edge = np.full(grid.shape, -inv_h2)
    return StencilOperator(grid, np.full(grid.shape, 4.0 * inv_h2), edge, edge, edge, edge)
