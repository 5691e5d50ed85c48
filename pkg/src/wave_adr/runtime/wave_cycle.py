"""
Wave-ADR V-cycle

Recursive multigrid cycle on the damped Helmholtz hierarchy: damped Jacobi on
the finest level, Chebyshev semi-iteration on the coarser ones, no
pre-smoothing on the level below the correction level, and a characteristic
correction (ADR or Wave-Ray) after post-smoothing on the kh ~ 1 level.
"""

from typing import Callable, Optional

import numpy as np
from structlog import get_logger

from wave_adr.core.errors import ConfigError
from wave_adr.core.fields import ComplexField
from wave_adr.core.hierarchy import Hierarchy
from wave_adr.core.interfaces.correction import ICharacteristicCorrection
from wave_adr.core.schemas.config import WaveADRConfig
from wave_adr.operators.helmholtz import HelmholtzLevelOp, level_operators
from wave_adr.operators.transfer import prolong_array, restrict_array
from wave_adr.smoothers.chebyshev import chebyshev_semi_sweep
from wave_adr.smoothers.jacobi import jacobi_sweep
from wave_adr.smoothers.schedule import SmootherSchedule, build_schedule

logger = get_logger(__name__)

OMEGA_H_WINDOW = (0.5, 1.5)


def select_adr_level(hierarchy: Hierarchy, requested: Optional[int] = None) -> int:
    """
    Level carrying the characteristic correction.

    An explicit request must name a level above the coarsest. Otherwise the
    level with omega*h in [0.5, 1.5] closest to 1 wins (finer on ties); when
    no level falls in the window the closest one is used with a warning.
    """
    depth = hierarchy.depth
    lo, hi = OMEGA_H_WINDOW
    if requested is not None:
        if not 1 <= requested < max(depth, 2):
            raise ConfigError(f"adr_level={requested} needs a level in 1..{depth - 1}")
        omega_h = hierarchy.level(requested).omega_h
        if not lo <= omega_h <= hi:
            logger.warning("adr_level_outside_window", level=requested, omega_h=omega_h)
        return requested

    candidates = hierarchy.levels[: max(depth - 1, 1)]
    best = min(candidates, key=lambda lvl: (abs(lvl.omega_h - 1.0), lvl.index))
    if not lo <= best.omega_h <= hi:
        logger.warning(
            "adr_level_fallback",
            level=best.index,
            omega_h=round(best.omega_h, 4),
            window=OMEGA_H_WINDOW,
        )
    return best.index


class WaveADRCycle:
    """
    Fixed multigrid cycle used as a preconditioner or as a stationary iteration.

    Args:
        hierarchy: Helmholtz hierarchy (finest first)
        schedule: Jacobi weight, lambda_max and alpha per level
        correction: characteristic correction on ``adr_level``; None runs the pure wave cycle
        cfg: cycle configuration (correction count, level-3 post-smoothing)
        adr_level: level hosting the correction
    """

    def __init__(
        self,
        hierarchy: Hierarchy,
        schedule: SmootherSchedule,
        correction: Optional[ICharacteristicCorrection],
        cfg: WaveADRConfig,
        adr_level: int,
        operators: Optional[list[HelmholtzLevelOp]] = None,
    ):
        self.hierarchy = hierarchy
        self.schedule = schedule
        self.correction = correction
        self.cfg = cfg
        self.adr_level = adr_level
        self.operators = operators or level_operators(hierarchy.levels)
        if correction is not None and correction.level_index != adr_level:
            raise ConfigError(
                f"correction lives on level {correction.level_index}, cycle expects {adr_level}"
            )

    @property
    def depth(self) -> int:
        return self.hierarchy.depth

    @property
    def finest_operator(self) -> HelmholtzLevelOp:
        return self.operators[0]

    def with_alphas(self, alphas: dict[int, float]) -> "WaveADRCycle":
        """Same setup with other Chebyshev windows (shares operators and correction)."""
        return WaveADRCycle(
            self.hierarchy,
            self.schedule.with_alphas(alphas),
            self.correction,
            self.cfg,
            self.adr_level,
            self.operators,
        )

    def with_correction_steps(self, steps: int) -> "WaveADRCycle":
        cfg = self.cfg.model_copy(update={"correction_steps": steps})
        return WaveADRCycle(
            self.hierarchy, self.schedule, self.correction, cfg, self.adr_level, self.operators
        )

    def pre_smooth(self, level: int, g: np.ndarray, u: np.ndarray) -> np.ndarray:
        op = self.operators[level - 1]
        sched = self.schedule
        if level == 1:
            return jacobi_sweep(op, g, u, sched.jacobi_weight, sched.jacobi_steps, level=1)
        if level == self.depth:
            return chebyshev_semi_sweep(op, g, u, sched.cheby(level, sched.coarsest_steps))
        if level == sched.skip_pre:
            return u
        return chebyshev_semi_sweep(op, g, u, sched.cheby(level, sched.smoothing_steps))

    def post_smooth(self, level: int, g: np.ndarray, u: np.ndarray) -> np.ndarray:
        op = self.operators[level - 1]
        sched = self.schedule
        if level == 1:
            u = jacobi_sweep(op, g, u, sched.jacobi_weight, sched.jacobi_steps, level=1)
        elif level not in sched.skip_post:
            u = chebyshev_semi_sweep(op, g, u, sched.cheby(level, sched.smoothing_steps))
        if level == self.adr_level and self.correction is not None:
            for _ in range(self.cfg.correction_steps):
                u = u + self.correction.correct(g - op.matvec(u))
        return u

    def cycle(self, g: np.ndarray, u: np.ndarray, level: int = 1) -> np.ndarray:
        """One V-cycle on ``level``; returns the updated iterate."""
        u = self.pre_smooth(level, g, u)
        if level == self.depth:
            return u
        op = self.operators[level - 1]
        coarse_rhs = restrict_array(g - op.matvec(u))
        coarse = self.cycle(coarse_rhs, np.zeros_like(coarse_rhs), level + 1)
        u = u + prolong_array(coarse)
        return self.post_smooth(level, g, u)

    def __call__(self, g: np.ndarray, u: Optional[np.ndarray] = None) -> np.ndarray:
        if u is None:
            u = np.zeros_like(g, dtype=np.complex128)
        return self.cycle(np.asarray(g, dtype=np.complex128), u, 1)


def build_wave_cycle(
    hierarchy: Hierarchy,
    correction: Optional[ICharacteristicCorrection],
    cfg: WaveADRConfig,
    adr_level: Optional[int] = None,
) -> WaveADRCycle:
    """Estimate the smoother schedule and assemble the cycle."""
    level_index = adr_level or (correction.level_index if correction else None)
    level_index = level_index or select_adr_level(hierarchy, cfg.adr_level)
    operators = level_operators(hierarchy.levels)
    s_max = float(np.sqrt(hierarchy.finest.s2.max()))
    schedule = build_schedule(operators, hierarchy.omega, s_max, level_index, cfg)
    return WaveADRCycle(hierarchy, schedule, correction, cfg, level_index, operators)


def wave_adr_cycle(
    cycle: WaveADRCycle, g: ComplexField, u: ComplexField, level: int = 1
) -> ComplexField:
    """Field-level entry point of one cycle on ``level``."""
    return ComplexField(g.grid, cycle.cycle(g.values, u.values, level))


def as_preconditioner(cycle: WaveADRCycle) -> Callable[[np.ndarray], np.ndarray]:
    """r -> M^{-1} r: one cycle from a zero initial guess."""

    def apply(r: np.ndarray) -> np.ndarray:
        return cycle(r)

    return apply


def solve_stationary(
    cycle: WaveADRCycle, g: np.ndarray, max_cycles: int = 60, tol: float = 1e-6
) -> tuple[np.ndarray, list[float]]:
    """Repeat cycles from zero; history starts at 1.0 and holds ||g - Au|| / ||g||."""
    op = cycle.finest_operator
    g = np.asarray(g, dtype=np.complex128)
    u = np.zeros_like(g)
    norm_g = np.linalg.norm(g)
    history = [1.0]
    if norm_g == 0.0:
        return u, [0.0]
    for k in range(max_cycles):
        u = cycle(g, u)
        relres = float(np.linalg.norm(g - op.matvec(u)) / norm_g)
        history.append(relres)
        logger.debug("stationary_cycle", cycle=k + 1, relres=relres)
        if not np.isfinite(relres) or relres < tol:
            break
    return u, history
