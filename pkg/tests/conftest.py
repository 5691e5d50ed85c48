"""Shared fixtures: small hierarchies, seeded random vectors, dense 1D operators."""

import numpy as np
import pytest

from wave_adr.core.fields import Grid2D, SlownessModel
from wave_adr.core.hierarchy import build_hierarchy

# N = 31 with omega = 16 gives omega*h = 0.5, 1, 2, 4 on the four levels
SMALL_N = 31
SMALL_OMEGA = 16.0


class DenseOperator:
    """Duck-typed operator on 1D vectors backed by a dense matrix."""

    def __init__(self, a: np.ndarray):
        self.a = np.asarray(a, dtype=np.complex128)

    @property
    def shape(self):
        return (self.a.shape[0],)

    def matvec(self, u):
        return self.a @ u

    def rmatvec(self, u):
        return self.a.conj().T @ u

    def diagonal(self):
        return np.diag(self.a).copy()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def random_complex(rng):
    def make(shape):
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)

    return make


@pytest.fixture
def dense_operator():
    return DenseOperator


@pytest.fixture
def smooth_slowness():
    """Smooth heterogeneous slowness in [0.5, 1] on an N x N grid."""

    def make(n: int) -> SlownessModel:
        grid = Grid2D(n)
        x, y = grid.coordinates()
        s = 0.75 + 0.25 * np.sin(2.0 * np.pi * x) * np.cos(np.pi * y)
        return SlownessModel(grid, s)

    return make


@pytest.fixture
def small_hierarchy():
    return build_hierarchy(SlownessModel.constant(Grid2D(SMALL_N)), SMALL_OMEGA)


@pytest.fixture
def hierarchy_factory():
    def make(n: int = SMALL_N, omega: float = SMALL_OMEGA, value: float = 1.0, **kwargs):
        return build_hierarchy(SlownessModel.constant(Grid2D(n), value), omega, **kwargs)

    return make
