"""
Per-level smoother schedule of the wave cycle.

Level 1 relaxes with damped Jacobi, the coarser levels with the Chebyshev
semi-iteration. The level right below the ADR level (kh ~ 2) gets no
pre-smoothing. lambda_max is estimated once per level at setup.
"""

from dataclasses import dataclass, field
from typing import Optional

from structlog import get_logger

from wave_adr.core.schemas.config import ChebyParams, WaveADRConfig
from wave_adr.smoothers.chebyshev import estimate_lambda_max
from wave_adr.smoothers.jacobi import level_jacobi_weight

logger = get_logger(__name__)


@dataclass
class SmootherSchedule:
    """Jacobi weight of level 1 plus lambda_max and alpha of every coarser level."""
    jacobi_weight: float
    jacobi_steps: int
    lambda_max: dict[int, float]
    alphas: dict[int, float]
    smoothing_steps: int = 5
    coarsest_steps: int = 10
    skip_pre: Optional[int] = None
    skip_post: set[int] = field(default_factory=set)
    depth: int = 1

    @property
    def chebyshev_levels(self) -> list[int]:
        """Levels relaxed with Chebyshev, finest first."""
        return sorted(self.lambda_max)

    def cheby(self, level: int, steps: int) -> ChebyParams:
        return ChebyParams(
            alpha=self.alphas[level], lambda_max=self.lambda_max[level], q_steps=steps
        )

    def with_alphas(self, alphas: dict[int, float]) -> "SmootherSchedule":
        merged = {**self.alphas, **{lvl: a for lvl, a in alphas.items() if lvl in self.alphas}}
        return SmootherSchedule(
            jacobi_weight=self.jacobi_weight,
            jacobi_steps=self.jacobi_steps,
            lambda_max=self.lambda_max,
            alphas=merged,
            smoothing_steps=self.smoothing_steps,
            coarsest_steps=self.coarsest_steps,
            skip_pre=self.skip_pre,
            skip_post=set(self.skip_post),
            depth=self.depth,
        )


def build_schedule(operators, omega: float, s_max: float, adr_level: int, cfg: WaveADRConfig):
    """Estimate lambda_max for every Chebyshev level and place the skip rules."""
    depth = len(operators)
    weight = level_jacobi_weight(omega, s_max, operators[0].grid.h, level=1)
    lambda_max = {
        op.index: estimate_lambda_max(op, cfg.power_iterations, cfg.lambda_seed)
        for op in operators[1:]
    }
    alphas = {lvl: cfg.alphas.get(lvl, cfg.default_alpha) for lvl in lambda_max}
    skip = adr_level + 1 if adr_level + 1 < depth else None
    schedule = SmootherSchedule(
        jacobi_weight=weight,
        jacobi_steps=cfg.jacobi_steps,
        lambda_max=lambda_max,
        alphas=alphas,
        smoothing_steps=cfg.smoothing_steps,
        coarsest_steps=cfg.coarsest_steps,
        skip_pre=skip,
        skip_post=set() if cfg.level3_post_smoothing or skip is None else {skip},
        depth=depth,
    )
    logger.info(
        "smoother_schedule_built",
        jacobi_weight=round(weight, 6),
        lambda_max={lvl: round(v, 3) for lvl, v in lambda_max.items()},
        alphas=alphas,
        skip_pre=skip,
    )
    return schedule
