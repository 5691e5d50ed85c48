"""
Multilevel hierarchy: per-level grid, squared slowness and sponge mask.

Coarse coefficients are re-discretized: s^2 is full-weighted from the finer
level and clamped to [1/16, 1], the damping mask is rebuilt on each grid.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from structlog import get_logger

from wave_adr.core.errors import HierarchyError
from wave_adr.core.fields import Grid2D, SlownessModel
from wave_adr.core.schemas.config import DepthPolicy
from wave_adr.operators.transfer import restrict_array

logger = get_logger(__name__)

S2_RANGE = (0.0625, 1.0)


def build_damping_mask(grid: Grid2D, omega: float) -> np.ndarray:
    """
    Sponge profile gamma(d) = omega * ((w - d) / w)^2 inside a layer of width
    w = 2 pi / omega, zero beyond it. d is the physical distance to the nearest
    side of the grid extent.
    """
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    width = 2.0 * math.pi / omega
    d = grid.boundary_distance()
    ramp = np.clip((width - d) / width, 0.0, None)
    return omega * ramp**2


def hierarchy_depth(n: int, min_coarse: int = 3) -> int:
    """Largest number of levels reachable from N by N -> (N - 1) / 2."""
    depth = 1
    while n % 2 == 1 and (n - 1) // 2 >= min_coarse:
        n = (n - 1) // 2
        depth += 1
    return depth


def valid_sizes(near: int, depth: int, min_coarse: int = 3, count: int = 6) -> list[int]:
    """Interior sizes 2^(L-1) (N_L + 1) - 1 with at least ``depth`` levels, closest to ``near``."""
    step = 2 ** max(depth - 1, 0)
    lo = step * (min_coarse + 1) - 1
    sizes = [lo + step * j for j in range(max(near // step + count, count))]
    sizes.sort(key=lambda n: (abs(n - near), n))
    return sorted(sizes[:count])


@dataclass(frozen=True)
class Level:
    """Coefficient data of one hierarchy level (index 1 is the finest)."""
    index: int
    grid: Grid2D
    s2: np.ndarray = field(repr=False)
    gamma: np.ndarray = field(repr=False)
    omega: float
    shift0: float = 0.0

    @property
    def h(self) -> float:
        return self.grid.h

    @property
    def omega_h(self) -> float:
        return self.omega * self.grid.h

    @property
    def k2(self) -> np.ndarray:
        return self.omega**2 * self.s2

    @property
    def shift(self) -> np.ndarray:
        """Pointwise gamma_0 = shift0 * k^2."""
        return self.shift0 * self.k2


@dataclass(frozen=True)
class Hierarchy:
    """Levels ordered finest first; shared omega and shift coefficient."""
    levels: tuple[Level, ...]
    omega: float
    shift0: float = 0.0

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def finest(self) -> Level:
        return self.levels[0]

    @property
    def coarsest(self) -> Level:
        return self.levels[-1]

    def level(self, index: int) -> Level:
        """1-based access, matching the cycle's level numbering."""
        if not 1 <= index <= self.depth:
            raise IndexError(f"level {index} outside 1..{self.depth}")
        return self.levels[index - 1]

    def sizes(self) -> list[int]:
        return [lvl.grid.n_interior for lvl in self.levels]


def build_hierarchy(
    s: SlownessModel,
    omega: float,
    depth_policy: Optional[DepthPolicy] = None,
    shift0: float = 0.0,
) -> Hierarchy:
    """Coarsen N -> (N - 1) / 2 down to the coarsest admissible grid."""
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    if shift0 < 0:
        raise ValueError(f"shift0 must be nonnegative, got {shift0}")
    policy = depth_policy or DepthPolicy()
    n = s.grid.n_interior
    reachable = hierarchy_depth(n, policy.min_coarse)

    if policy.max_levels is not None:
        if reachable < policy.max_levels:
            raise HierarchyError(
                f"N={n} supports {reachable} level(s), {policy.max_levels} requested",
                valid_sizes(n, policy.max_levels, policy.min_coarse),
            )
        depth = policy.max_levels
    else:
        if reachable < 2:
            raise HierarchyError(
                f"N={n} cannot be coarsened to a grid with N >= {policy.min_coarse}",
                valid_sizes(n, 2, policy.min_coarse),
            )
        depth = reachable

    grid = s.grid
    s2 = s.s2.copy()
    levels = []
    for index in range(1, depth + 1):
        if index > 1:
            grid = grid.coarsen()
            s2 = np.clip(restrict_array(s2), *S2_RANGE)
        gamma = build_damping_mask(grid, omega)
        s2.setflags(write=False)
        gamma.setflags(write=False)
        levels.append(Level(index, grid, s2, gamma, float(omega), float(shift0)))
        s2 = s2.copy()

    hierarchy = Hierarchy(tuple(levels), float(omega), float(shift0))
    logger.info(
        "hierarchy_built",
        sizes=hierarchy.sizes(),
        omega=omega,
        omega_h=[round(lvl.omega_h, 4) for lvl in levels],
        shift0=shift0,
    )
    return hierarchy
