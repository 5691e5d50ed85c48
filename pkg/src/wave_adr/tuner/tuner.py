"""
Derivative-free selection of the per-level Chebyshev alpha.

The objective is the K-cycle relative residual ||g - A u_K||^2 / ||g||^2 on
the centered point source. The search starts from the best uniform default,
then sweeps the Chebyshev levels from coarse to fine: a scan over the
candidate grid followed by golden-section steps on the bracketing interval.
Only strict improvements are accepted, so the loss never increases.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from structlog import get_logger

from wave_adr.core.errors import TuningError
from wave_adr.core.schemas.config import TunerConfig
from wave_adr.runtime.wave_cycle import WaveADRCycle

logger = get_logger(__name__)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
ALPHA_FLOOR = 1.0 + 1e-6

Objective = Callable[[dict[int, float]], float]


@dataclass
class TuningResult:
    alphas: dict[int, float]
    loss: float
    uniform_losses: dict[float, float] = field(default_factory=dict)
    sweep_losses: list[float] = field(default_factory=list)
    evaluations: int = 0


def residual_loss(
    cycle: WaveADRCycle, g: np.ndarray, K: int, alphas: Optional[dict[int, float]] = None
) -> float:
    """K cycles from zero; +inf when the iterate stops being finite."""
    g = np.asarray(g, dtype=np.complex128)
    norm2_g = float(np.vdot(g, g).real)
    if K == 0:
        return 1.0
    run = cycle.with_alphas(alphas) if alphas else cycle
    u = np.zeros_like(g)
    with np.errstate(all="ignore"):
        for _ in range(K):
            u = run(g, u)
            if not np.all(np.isfinite(u)):
                return math.inf
        r = g - run.finest_operator.matvec(u)
        value = float(np.vdot(r, r).real) / norm2_g
    return value if math.isfinite(value) else math.inf


class _Memo:
    """Caches objective values per assignment; counts fresh evaluations."""

    def __init__(self, objective: Objective):
        self.objective = objective
        self.cache: dict[tuple, float] = {}

    def __call__(self, alphas: dict[int, float]) -> float:
        key = tuple(sorted(alphas.items()))
        if key not in self.cache:
            value = self.objective(dict(alphas))
            self.cache[key] = value if math.isfinite(value) else math.inf
        return self.cache[key]


def _argmin(values: Sequence[float]) -> int:
    """Lowest index among the smallest values."""
    best = 0
    for i, v in enumerate(values):
        if v < values[best]:
            best = i
    return best


def _golden_refine(memo, alphas, level, lo, hi, passes, best_loss):
    """Golden-section steps in log(alpha) on [lo, hi]; returns (alpha, loss) of the best point."""
    best_alpha = alphas[level]
    a, b = math.log(max(lo, ALPHA_FLOOR)), math.log(hi)
    if passes <= 0 or b <= a:
        return best_alpha, best_loss

    def at(t):
        return memo({**alphas, level: math.exp(t)})

    c, d = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
    fc, fd = at(c), at(d)
    for t, f in ((c, fc), (d, fd)):
        if f < best_loss:
            best_alpha, best_loss = math.exp(t), f
    for _ in range(passes):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = at(c)
            t, f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = at(d)
            t, f = d, fd
        if f < best_loss:
            best_alpha, best_loss = math.exp(t), f
    return best_alpha, best_loss


def coordinate_search(
    objective: Objective, levels: Sequence[int], cfg: TunerConfig
) -> TuningResult:
    """
    Coordinate descent over ``levels`` (visited from the last to the first).

    Raises:
        TuningError: every candidate of a level (or every uniform default) is non-finite
    """
    memo = _Memo(objective)
    levels = list(levels)
    if not levels:
        return TuningResult(alphas={}, loss=memo({}), evaluations=len(memo.cache))

    uniform = {a: memo({lvl: a for lvl in levels}) for a in cfg.uniform_defaults}
    defaults = list(uniform)
    start = defaults[_argmin([uniform[a] for a in defaults])]
    best_loss = uniform[start]
    if not math.isfinite(best_loss):
        raise TuningError("every uniform default diverges", levels[0])
    alphas = {lvl: start for lvl in levels}
    logger.info("tuner_start", uniform_losses=uniform, start=start)

    sweep_losses = [best_loss]
    grid = list(cfg.candidates)
    for sweep in range(cfg.sweeps):
        for level in reversed(levels):
            losses = [memo({**alphas, level: a}) for a in grid]
            if not any(math.isfinite(v) for v in losses):
                raise TuningError("no candidate alpha gives a finite loss", level)
            i = _argmin(losses)
            if losses[i] < best_loss:
                alphas[level], best_loss = grid[i], losses[i]
            lo = grid[i - 1] if i > 0 else grid[0] / (grid[1] / grid[0] if len(grid) > 1 else 2.0)
            hi = grid[i + 1] if i + 1 < len(grid) else grid[-1] * 2.0
            alpha, best_loss = _golden_refine(
                memo, alphas, level, lo, hi, cfg.golden_passes, best_loss
            )
            alphas[level] = alpha
            logger.debug("tuner_level_done", sweep=sweep, level=level, alpha=alpha, loss=best_loss)
        sweep_losses.append(best_loss)

    result = TuningResult(
        alphas=dict(alphas),
        loss=best_loss,
        uniform_losses=uniform,
        sweep_losses=sweep_losses,
        evaluations=len(memo.cache),
    )
    logger.info("tuner_done", alphas=result.alphas, loss=best_loss, evaluations=result.evaluations)
    return result


def tunable_levels(cycle: WaveADRCycle) -> list[int]:
    """Chebyshev levels that relax at least once per cycle."""
    sched = cycle.schedule
    return [
        lvl
        for lvl in sched.chebyshev_levels
        if not (lvl == sched.skip_pre and lvl in sched.skip_post)
    ]


def tune_alphas(
    cycle: WaveADRCycle, g: np.ndarray, cfg: Optional[TunerConfig] = None
) -> TuningResult:
    """Per-level alpha minimizing the K-cycle residual loss for the right-hand side ``g``."""
    cfg = cfg or TunerConfig()
    levels = tunable_levels(cycle)
    return coordinate_search(lambda a: residual_loss(cycle, g, cfg.K, a), levels, cfg)
