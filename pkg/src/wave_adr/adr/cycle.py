"""
Multigrid V-cycle for the ADR system.

GMRES(m) relaxation on every level, full-weighting restriction of the
residual and bilinear prolongation of the correction. Coarse operators are
re-discretized with injected phase data and the hierarchy's full-weighted
s^2. Coarsening stops past ``max_omega_h``, where the upwind coarse operator
adds an artificial diffusion of order omega h. The coarsest kept level is
solved by sparse LU (or GMRES with ``coarsest="gmres"``).
"""

from typing import Optional, Sequence

import numpy as np
from structlog import get_logger

from wave_adr.adr.operator import ADRLevelOp, Scheme, build_adr_op
from wave_adr.core.fields import ComplexField
from wave_adr.core.hierarchy import Hierarchy, Level
from wave_adr.core.schemas.config import ADRCycleConfig
from wave_adr.eikonal.phase import PhaseField, restrict_phase
from wave_adr.operators.stencil import StencilOperator
from wave_adr.operators.transfer import prolong_array, restrict_array
from wave_adr.smoothers.gmres import gmres_m

logger = get_logger(__name__)

DEFAULT_MAX_OMEGA_H = ADRCycleConfig().max_omega_h


def coarsening_levels(
    hierarchy: Hierarchy, start: int, max_omega_h: Optional[float] = DEFAULT_MAX_OMEGA_H
) -> list[Level]:
    """Level ``start`` plus the coarser levels with omega*h <= ``max_omega_h``."""
    levels = [hierarchy.level(start)]
    for level in hierarchy.levels[start:]:
        if max_omega_h is not None and level.omega_h > max_omega_h:
            break
        levels.append(level)
    return levels


def build_adr_levels(
    hierarchy: Hierarchy,
    phase: PhaseField,
    start: int,
    scheme: Scheme = "upwind",
    max_omega_h: Optional[float] = DEFAULT_MAX_OMEGA_H,
) -> list[ADRLevelOp]:
    """ADR operators from hierarchy level ``start`` down to the coarsest kept level."""
    ops = []
    for level in coarsening_levels(hierarchy, start, max_omega_h):
        level_phase = phase if phase.grid == level.grid else restrict_phase(phase, level.grid)
        ops.append(build_adr_op(level, level_phase, scheme))
    logger.debug(
        "adr_levels_built",
        levels=[op.index for op in ops],
        omega_h=[round(op.level.omega_h, 4) for op in ops],
        scheme=scheme,
    )
    return ops


def _coarsest_solve(op: StencilOperator, f: np.ndarray, cfg: ADRCycleConfig) -> np.ndarray:
    if cfg.coarsest == "direct":
        return op.lu_solve(f)
    return gmres_m(op.matvec, f, np.zeros_like(f, dtype=np.complex128), cfg.coarsest_steps)


def _vcycle(
    ops: Sequence[StencilOperator], j: int, f: np.ndarray, cfg: ADRCycleConfig
) -> np.ndarray:
    op = ops[j]
    if j == len(ops) - 1:
        return _coarsest_solve(op, f, cfg)
    u = gmres_m(op.matvec, f, np.zeros_like(f, dtype=np.complex128), cfg.smoother_steps)
    coarse = _vcycle(ops, j + 1, restrict_array(f - op.matvec(u)), cfg)
    u = u + prolong_array(coarse)
    return gmres_m(op.matvec, f, u, cfg.smoother_steps)


def adr_vcycle_solve(
    rhs: ComplexField, ops: Sequence[ADRLevelOp], cfg: ADRCycleConfig = ADRCycleConfig()
) -> ComplexField:
    """Approximate amplitude a from zero; stops after ``cfg.cycles`` or at ``cfg.target``."""
    return ComplexField(rhs.grid, adr_solve_array(rhs.values, ops, cfg))


def adr_solve_array(
    f: np.ndarray, ops: Sequence[StencilOperator], cfg: ADRCycleConfig = ADRCycleConfig()
) -> np.ndarray:
    norm_f = np.linalg.norm(f)
    if norm_f == 0.0:
        return np.zeros_like(f, dtype=np.complex128)
    op = ops[0]
    if cfg.solver == "direct":
        return op.lu_solve(f)
    a = np.zeros_like(f, dtype=np.complex128)
    relres = 1.0
    for _ in range(cfg.cycles):
        a = a + _vcycle(ops, 0, f - op.matvec(a), cfg)
        relres = float(np.linalg.norm(f - op.matvec(a)) / norm_f)
        if relres <= cfg.target:
            break
    logger.debug("adr_cycle_done", level=op.index, relres=relres)
    return a
