"""
Phase field tau with the derivatives consumed by the ADR operator.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

import numpy as np
from structlog import get_logger

from wave_adr.core.errors import EikonalError, GridMismatchError
from wave_adr.core.fields import Grid2D, SlownessModel
from wave_adr.eikonal.fast_marching import march
from wave_adr.io.raw import write_raw_grid
from wave_adr.operators.transfer import inject_array

logger = get_logger(__name__)


@dataclass(frozen=True)
class PhaseField:
    """tau on a grid with grad tau = (tau_x, tau_y) and lap tau."""
    grid: Grid2D
    tau: np.ndarray = field(repr=False)
    tau_x: np.ndarray = field(repr=False)
    tau_y: np.ndarray = field(repr=False)
    lap_tau: np.ndarray = field(repr=False)
    source: tuple[int, int]

    def __post_init__(self):
        for name in ("tau", "tau_x", "tau_y", "lap_tau"):
            values = np.asarray(getattr(self, name), dtype=np.float64)
            if values.shape != self.grid.shape:
                raise GridMismatchError(
                    f"Phase '{name}' has shape {values.shape}, expected {self.grid.shape}"
                )
            values.setflags(write=False)
            object.__setattr__(self, name, values)

    @property
    def grad_tau(self) -> tuple[np.ndarray, np.ndarray]:
        return (self.tau_x, self.tau_y)

    @property
    def grad_norm2(self) -> np.ndarray:
        return self.tau_x**2 + self.tau_y**2

    @classmethod
    def zero(cls, grid: Grid2D) -> "PhaseField":
        """tau = 0: the ADR operator then reduces to the damped Helmholtz operator."""
        z = np.zeros(grid.shape)
        return cls(grid, z, z, z, z, grid.center_node())

    @classmethod
    def linear(cls, grid: Grid2D, direction: Sequence[float]) -> "PhaseField":
        """Plane-wave phase tau = k . x (Wave-Ray ray functions)."""
        x, y = grid.coordinates()
        k1, k2 = float(direction[0]), float(direction[1])
        return cls(
            grid,
            k1 * x + k2 * y,
            np.full(grid.shape, k1),
            np.full(grid.shape, k2),
            np.zeros(grid.shape),
            grid.center_node(),
        )


def _second_difference(f: np.ndarray, h: float, axis: int) -> np.ndarray:
    """Central second difference; the boundary rows copy their inner neighbour."""
    g = np.moveaxis(f, axis, 0)
    d2 = np.empty_like(g)
    d2[1:-1] = (g[2:] - 2.0 * g[1:-1] + g[:-2]) / h**2
    d2[0] = d2[1]
    d2[-1] = d2[-2]
    return np.moveaxis(d2, 0, axis)


def _average_neighbours(f: np.ndarray, node: tuple[int, int]) -> float:
    iy, ix = node
    n = f.shape[0]
    vals = [
        f[ny, nx]
        for ny, nx in ((iy - 1, ix), (iy + 1, ix), (iy, ix - 1), (iy, ix + 1))
        if 0 <= ny < n and 0 <= nx < n
    ]
    return float(np.mean(vals))


def compose_phase(
    grid: Grid2D, tau0: np.ndarray, tau1: np.ndarray, source: tuple[int, int]
) -> PhaseField:
    """
    Assemble tau = tau0 tau1 with

        grad tau = tau0 grad tau1 + tau1 grad tau0
        lap tau  = tau1 lap tau0 + 2 grad tau0 . grad tau1 + tau0 lap tau1

    grad tau0 and lap tau0 = 1/r are analytic; their values at the source node
    are replaced by the average over its four neighbours.
    """
    h = grid.h
    offsets = np.arange(grid.n_interior) * h
    dy = offsets[:, None] - offsets[source[0]]
    dx = offsets[None, :] - offsets[source[1]]
    r = np.hypot(dx, dy)
    with np.errstate(invalid="ignore", divide="ignore"):
        t0x = np.where(r > 0, dx / r, 0.0)
        t0y = np.where(r > 0, dy / r, 0.0)
        lap0 = np.where(r > 0, 1.0 / r, 0.0)
    for f in (t0x, t0y, lap0):
        f[source] = _average_neighbours(f, source)

    t1y, t1x = np.gradient(tau1, h, edge_order=1)
    lap1 = _second_difference(tau1, h, 0) + _second_difference(tau1, h, 1)

    tau = tau0 * tau1
    tau_x = tau0 * t1x + tau1 * t0x
    tau_y = tau0 * t1y + tau1 * t0y
    lap_tau = tau1 * lap0 + 2.0 * (t0x * t1x + t0y * t1y) + tau0 * lap1
    return PhaseField(grid, tau, tau_x, tau_y, lap_tau, tuple(source))


def solve_factored_eikonal(
    s: SlownessModel, source: Union[str, Sequence[int]] = "center"
) -> PhaseField:
    """Factored fast-marching phase for a point source at a node (or the center node)."""
    grid = s.grid
    node = grid.center_node() if source == "center" else (int(source[0]), int(source[1]))
    tau0, tau1 = march(s, node)
    phase = compose_phase(grid, tau0, tau1, node)
    if not (np.all(np.isfinite(phase.tau)) and np.all(phase.tau >= 0)):
        raise EikonalError("Fast marching produced a non-finite or negative travel time")
    logger.info(
        "eikonal_solved",
        n=grid.n_interior,
        source=node,
        tau_max=float(phase.tau.max()),
    )
    return phase


def restrict_phase(p: PhaseField, target: Grid2D) -> PhaseField:
    """Inject tau and its derivatives at the coarse nodes coinciding with fine nodes."""
    steps = p.grid.coarsening_steps(target)
    if steps is None:
        raise GridMismatchError(
            f"Grid N={target.n_interior} is not nested in N={p.grid.n_interior}"
        )
    fields = [p.tau, p.tau_x, p.tau_y, p.lap_tau]
    for _ in range(steps):
        fields = [inject_array(f) for f in fields]
    source = target.nearest_node(p.grid.node_point(p.source))
    return PhaseField(target, *fields, source)


def export_phase(phase: PhaseField, path: Union[str, Path]) -> Path:
    """Raw little-endian float64 tau with an (N, N, 1) int64 header."""
    return write_raw_grid(path, phase.tau, depth=1)
