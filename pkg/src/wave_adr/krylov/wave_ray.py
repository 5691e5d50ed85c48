"""
Wave-Ray baseline: the wave cycle with plane-wave ray corrections.

For directions theta_m = (m - 1) 2 pi / M the residual is demodulated by the
linear phase k^m . x, a ray equation for the amplitude is solved by one
upwind V-cycle with the constant advection field k^m, and the remodulated
amplitudes are summed in index order.

Two ray equations are available:
    printed     lap a + 2 i omega k . grad a + i omega gamma s^2 a = r_hat,
                r_hat = r e^{-i omega k.x}
    consistent  the ADR operator with tau = k . x, r_hat = r e^{+i omega k.x}
"""

import math
from typing import Literal, Optional

import numpy as np
from structlog import get_logger

from wave_adr.adr.cycle import adr_solve_array, coarsening_levels
from wave_adr.adr.operator import advection_stencil, build_adr_op
from wave_adr.core.hierarchy import Hierarchy, Level
from wave_adr.core.interfaces.correction import ICharacteristicCorrection
from wave_adr.core.schemas.config import WaveADRConfig, WaveRayConfig
from wave_adr.eikonal.phase import PhaseField
from wave_adr.operators.stencil import StencilOperator, laplacian_stencil
from wave_adr.runtime.wave_cycle import WaveADRCycle, build_wave_cycle, select_adr_level

logger = get_logger(__name__)

RayEquation = Literal["printed", "consistent"]


def ray_directions(count: int) -> list[tuple[float, float]]:
    """Unit vectors at theta_m = (m - 1) 2 pi / M, m = 1..M."""
    if count < 1:
        raise ValueError(f"Wave-Ray needs at least one direction, got {count}")
    return [
        (math.cos(2.0 * math.pi * m / count), math.sin(2.0 * math.pi * m / count))
        for m in range(count)
    ]


class RayLevelOp(StencilOperator):
    """Ray-equation stencil for one direction on one level."""

    def __init__(self, level: Level, direction, equation: RayEquation = "consistent"):
        self.level = level
        self.direction = (float(direction[0]), float(direction[1]))
        self.equation = equation
        self.phase = PhaseField.linear(level.grid, self.direction)
        if equation == "consistent":
            op = build_adr_op(level, self.phase, "upwind")
        elif equation == "printed":
            omega = level.omega
            op = laplacian_stencil(level.grid).scaled(-1.0) + advection_stencil(
                self.phase, "upwind"
            ).scaled(2j * omega)
            op.center = op.center + 1j * omega * level.gamma * level.s2
        else:
            raise ValueError(f"Unknown ray equation '{equation}'")
        super().__init__(level.grid, op.center, op.west, op.east, op.south, op.north)

    @property
    def index(self) -> int:
        return self.level.index


class WaveRayCorrection(ICharacteristicCorrection):
    """Sum of the M ray corrections on one level."""

    def __init__(self, hierarchy: Hierarchy, level_index: int, cfg: Optional[WaveRayConfig] = None):
        self.cfg = cfg or WaveRayConfig()
        self._level_index = level_index
        self.omega = hierarchy.omega
        self.directions = ray_directions(self.cfg.directions)
        levels = coarsening_levels(hierarchy, level_index, self.cfg.adr.max_omega_h)
        self.rays = [
            [RayLevelOp(level, k, self.cfg.ray_equation) for level in levels]
            for k in self.directions
        ]
        sign = -1.0 if self.cfg.ray_equation == "printed" else 1.0
        x, y = levels[0].grid.coordinates()
        self._demod = [
            np.exp(sign * 1j * self.omega * (k[0] * x + k[1] * y)) for k in self.directions
        ]
        logger.info(
            "wave_ray_setup",
            level=level_index,
            directions=len(self.directions),
            equation=self.cfg.ray_equation,
        )

    @property
    def level_index(self) -> int:
        return self._level_index

    def correct(self, r: np.ndarray) -> np.ndarray:
        total = np.zeros_like(r, dtype=np.complex128)
        for ops, demod in zip(self.rays, self._demod):
            a = adr_solve_array(r * demod, ops, self.cfg.adr)
            total += a / demod
        return total


def wave_ray_preconditioner(
    hierarchy: Hierarchy,
    cfg: Optional[WaveRayConfig] = None,
    wave_cfg: Optional[WaveADRConfig] = None,
) -> WaveADRCycle:
    """Wave cycle whose single correction step sums the M ray corrections."""
    cfg = cfg or WaveRayConfig()
    wave_cfg = (wave_cfg or WaveADRConfig()).model_copy(update={"correction_steps": 1})
    level_index = select_adr_level(hierarchy, wave_cfg.adr_level)
    correction = WaveRayCorrection(hierarchy, level_index, cfg)
    return build_wave_cycle(hierarchy, correction, wave_cfg, level_index)
