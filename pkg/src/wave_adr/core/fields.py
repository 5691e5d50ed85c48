"""
Grid containers and complex field arithmetic.

Arrays are indexed ``values[iy, ix]`` (row-major by y then x); node
``(iy, ix)`` sits at ``(x0 + (ix + 1) h, y0 + (iy + 1) h)``. The Dirichlet
frame lives one mesh width outside the interior nodes.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from wave_adr.core.errors import GridMismatchError


@dataclass(frozen=True)
class Grid2D:
    """Uniform square grid of N x N interior nodes."""
    n_interior: int
    length: float = 1.0
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if int(self.n_interior) != self.n_interior or self.n_interior < 3:
            raise ValueError(f"Grid needs N >= 3 interior nodes, got {self.n_interior}")
        if not self.length > 0:
            raise ValueError(f"Grid side length must be positive, got {self.length}")
        object.__setattr__(self, "n_interior", int(self.n_interior))
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @property
    def h(self) -> float:
        return self.length / (self.n_interior + 1)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_interior, self.n_interior)

    @property
    def size(self) -> int:
        return self.n_interior * self.n_interior

    @property
    def extent(self) -> tuple[float, float, float, float]:
        """(x_min, x_max, y_min, y_max) of the physical rectangle."""
        x0, y0 = self.origin
        return (x0, x0 + self.length, y0, y0 + self.length)

    def axis(self) -> np.ndarray:
        """Interior node offsets along one axis, measured from the origin."""
        return (np.arange(self.n_interior) + 1) * self.h

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Physical node coordinates X[iy, ix], Y[iy, ix]."""
        x0, y0 = self.origin
        a = self.axis()
        return np.meshgrid(x0 + a, y0 + a, indexing="xy")

    def boundary_distance(self) -> np.ndarray:
        """Physical distance from every node to the nearest side of the extent."""
        a = self.axis()
        d1 = np.minimum(a, self.length - a)
        return np.minimum(d1[:, None], d1[None, :])

    def nearest_node(self, point: Sequence[float]) -> tuple[int, int]:
        """(iy, ix) of the interior node closest to a physical point."""
        x0, y0 = self.origin
        ix = int(round((point[0] - x0) / self.h)) - 1
        iy = int(round((point[1] - y0) / self.h)) - 1
        n = self.n_interior
        return (min(max(iy, 0), n - 1), min(max(ix, 0), n - 1))

    def node_point(self, node: Sequence[int]) -> tuple[float, float]:
        iy, ix = node
        x0, y0 = self.origin
        return (x0 + (ix + 1) * self.h, y0 + (iy + 1) * self.h)

    def center_node(self) -> tuple[int, int]:
        c = self.n_interior // 2
        return (c, c)

    def coarsen(self) -> "Grid2D":
        """Grid holding every other node, N_c = (N - 1) / 2."""
        n = self.n_interior
        if n % 2 == 0 or (n - 1) // 2 < 3:
            raise ValueError(f"Grid with N={n} cannot be coarsened")
        return Grid2D((n - 1) // 2, self.length, self.origin)

    def coarsening_steps(self, coarse: "Grid2D") -> Optional[int]:
        """Number of (N-1)/2 steps from this grid to ``coarse``, None if not nested."""
        if coarse.length != self.length or coarse.origin != self.origin:
            return None
        n, steps = self.n_interior, 0
        while n > coarse.n_interior:
            if n % 2 == 0:
                return None
            n, steps = (n - 1) // 2, steps + 1
        return steps if n == coarse.n_interior else None


def _check_same_grid(a: "ComplexField", b: "ComplexField") -> None:
    if a.grid != b.grid:
        raise GridMismatchError(
            f"Fields live on different grids: N={a.grid.n_interior} vs N={b.grid.n_interior}"
        )


@dataclass
class ComplexField:
    """Complex scalar field on the interior nodes of a grid."""
    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != self.grid.shape:
            raise GridMismatchError(
                f"Field values have shape {self.values.shape}, grid expects {self.grid.shape}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("Field values must be finite")

    @classmethod
    def zeros(cls, grid: Grid2D) -> "ComplexField":
        return cls(grid, np.zeros(grid.shape, dtype=np.complex128))

    @classmethod
    def full(cls, grid: Grid2D, value: complex) -> "ComplexField":
        return cls(grid, np.full(grid.shape, value, dtype=np.complex128))

    def copy(self) -> "ComplexField":
        return ComplexField(self.grid, self.values.copy())

    def like(self, values: np.ndarray) -> "ComplexField":
        """New field on the same grid."""
        return ComplexField(self.grid, values)


def add(a: ComplexField, b: ComplexField) -> ComplexField:
    _check_same_grid(a, b)
    return ComplexField(a.grid, a.values + b.values)


def scale(a: ComplexField, alpha: complex) -> ComplexField:
    return ComplexField(a.grid, alpha * a.values)


def inner_product(a: ComplexField, b: ComplexField) -> complex:
    """<a, b> = sum conj(a) * b, conjugate-linear in the first argument."""
    _check_same_grid(a, b)
    return complex(np.vdot(a.values, b.values))


def norm2(a: ComplexField) -> float:
    return float(np.sqrt(inner_product(a, a).real))


@dataclass(frozen=True)
class SlownessModel:
    """Slowness s = 1/c on a grid; the wavenumber is k = omega * s."""
    grid: Grid2D
    s: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = np.asarray(self.s, dtype=np.float64)
        if s.shape != self.grid.shape:
            raise GridMismatchError(f"Slowness has shape {s.shape}, grid expects {self.grid.shape}")
        if not np.all(np.isfinite(s)):
            raise ValueError("Slowness must be finite")
        if np.any(s <= 0):
            raise ValueError("Slowness must be positive")
        s.setflags(write=False)
        object.__setattr__(self, "s", s)

    @classmethod
    def constant(cls, grid: Grid2D, value: float = 1.0) -> "SlownessModel":
        return cls(grid, np.full(grid.shape, float(value)))

    @property
    def s2(self) -> np.ndarray:
        return self.s * self.s

    @property
    def in_physical_range(self) -> bool:
        """True when 0.25 <= s <= 1 everywhere (the ingestion guarantee)."""
        return bool(self.s.min() >= 0.25 and self.s.max() <= 1.0)


Location = Union[str, Sequence[float]]


def point_source(grid: Grid2D, location: Location = "center") -> ComplexField:
    """Discrete delta: 1/h^2 at the node nearest to ``location``."""
    if isinstance(location, str):
        if location != "center":
            raise ValueError(f"Unknown source location '{location}'")
        node = grid.center_node()
    else:
        node = grid.nearest_node(location)
    g = np.zeros(grid.shape, dtype=np.complex128)
    g[node] = 1.0 / grid.h**2
    return ComplexField(grid, g)


def random_source(grid: Grid2D, seed: int = 0) -> ComplexField:
    """Right-hand side with independent standard normal entries."""
    rng = np.random.default_rng(seed)
    return ComplexField(grid, rng.standard_normal(grid.shape))
