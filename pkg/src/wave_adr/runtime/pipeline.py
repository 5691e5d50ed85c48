"""
Solve pipeline: ProblemSpec -> SolveReport.

Stages run in order (ingest, hierarchy, eikonal, adr_setup, schedule,
tuning, solve), each inside a tracer span. A failure in any stage is
re-raised as SetupError naming the stage.
"""

from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Optional

import numpy as np
from structlog import get_logger

from wave_adr.adr.correction import ADRCorrection
from wave_adr.adr.cycle import build_adr_levels
from wave_adr.core.errors import SetupError
from wave_adr.core.fields import ComplexField, SlownessModel, point_source, random_source
from wave_adr.core.hierarchy import Hierarchy, build_hierarchy
from wave_adr.core.schemas.config import ProblemSpec, TunerConfig
from wave_adr.eikonal.phase import PhaseField, solve_factored_eikonal
from wave_adr.io.report import SolveReport
from wave_adr.io.slowness import auto_n, ingest_slowness
from wave_adr.krylov.csl import csl_preconditioner
from wave_adr.krylov.fgmres import fgmres
from wave_adr.krylov.wave_ray import wave_ray_preconditioner
from wave_adr.observability import PhaseTracer
from wave_adr.operators.helmholtz import HelmholtzLevelOp
from wave_adr.runtime.wave_cycle import (
    WaveADRCycle,
    as_preconditioner,
    build_wave_cycle,
    select_adr_level,
)
from wave_adr.tuner.tuner import TuningResult, tune_alphas

logger = get_logger(__name__)

STAGES = ("ingest", "hierarchy", "eikonal", "adr_setup", "schedule", "tuning", "solve")


@dataclass
class SolverSetup:
    """Everything built before the Krylov solve."""
    spec: ProblemSpec
    slowness: SlownessModel
    hierarchy: Hierarchy
    rhs: ComplexField
    phase: Optional[PhaseField] = None
    cycle: Optional[WaveADRCycle] = None
    preconditioner: Optional[Callable[[np.ndarray], np.ndarray]] = None
    alphas: dict[int, float] = field(default_factory=dict)
    tuning: Optional[TuningResult] = None

    @property
    def operator(self) -> HelmholtzLevelOp:
        if self.cycle is not None:
            return self.cycle.finest_operator
        return HelmholtzLevelOp(self.hierarchy.finest)


@contextmanager
def _stage(tracer: PhaseTracer, name: str, **attributes) -> Iterator[None]:
    try:
        with tracer.span(name, **attributes):
            yield
    except SetupError:
        raise
    except Exception as e:
        raise SetupError(name, e) from e


def build_rhs(spec: ProblemSpec, slowness: SlownessModel) -> ComplexField:
    grid = slowness.grid
    if spec.source == "random":
        return random_source(grid, spec.seed)
    return point_source(grid, spec.source)


def eikonal_source(spec: ProblemSpec, slowness: SlownessModel) -> tuple[int, int]:
    """Phase source node: the point source location, the center otherwise."""
    grid = slowness.grid
    if isinstance(spec.source, str):
        return grid.center_node()
    return grid.nearest_node(spec.source)


def prepare(
    spec: ProblemSpec,
    alphas: Optional[dict[int, float]] = None,
    tracer: Optional[PhaseTracer] = None,
    tune: Optional[bool] = None,
) -> SolverSetup:
    """
    Run every stage up to (not including) the solve.

    Args:
        spec: validated problem description
        alphas: per-level Chebyshev alphas overriding the config and the tuner
        tracer: span collector, a fresh one if None
        tune: force (True) or skip (False) tuning; None follows ``spec.tuner``
    """
    tracer = tracer or PhaseTracer(spec.name)

    with _stage(tracer, "ingest"):
        n = auto_n(spec.omega) if spec.n == "auto" else spec.n
        slowness = ingest_slowness(spec.slowness, n, spec.ingest)
    with _stage(tracer, "hierarchy", n=n):
        hierarchy = build_hierarchy(slowness, spec.omega, spec.depth, spec.shift_factor)
    setup = SolverSetup(spec, slowness, hierarchy, build_rhs(spec, slowness))

    if spec.method == "csl":
        with _stage(tracer, "schedule"):
            setup.preconditioner = csl_preconditioner(hierarchy, cfg=spec.csl)
        return setup
    if spec.method == "unpreconditioned":
        return setup

    wave_cfg = spec.wave_adr
    if spec.method == "wave_adr":
        with _stage(tracer, "eikonal"):
            setup.phase = solve_factored_eikonal(slowness, eikonal_source(spec, slowness))
        with _stage(tracer, "adr_setup"):
            adr_level = select_adr_level(hierarchy, wave_cfg.adr_level)
            ops = build_adr_levels(
                hierarchy, setup.phase, adr_level, wave_cfg.adr.scheme, wave_cfg.adr.max_omega_h
            )
            correction = ADRCorrection(ops, wave_cfg.adr)
        with _stage(tracer, "schedule", adr_level=adr_level):
            cycle = build_wave_cycle(hierarchy, correction, wave_cfg, adr_level)
    else:
        with _stage(tracer, "schedule"):
            cycle = wave_ray_preconditioner(hierarchy, spec.wave_ray, wave_cfg)

    if alphas:
        cycle = cycle.with_alphas(alphas)
    else:
        should_tune = tune if tune is not None else spec.tuner != "defaults"
        if should_tune and not wave_cfg.alphas:
            tuner_cfg = spec.tuner if isinstance(spec.tuner, TunerConfig) else TunerConfig()
            with _stage(tracer, "tuning", K=tuner_cfg.K):
                g = point_source(slowness.grid, "center").values
                setup.tuning = tune_alphas(cycle, g, tuner_cfg)
                cycle = cycle.with_alphas(setup.tuning.alphas)
    setup.cycle = cycle
    setup.alphas = dict(cycle.schedule.alphas)
    setup.preconditioner = as_preconditioner(cycle)
    return setup


def _details(setup: SolverSetup) -> dict[str, Any]:
    out: dict[str, Any] = {
        "n": setup.slowness.grid.n_interior,
        "level_sizes": setup.hierarchy.sizes(),
        "omega_h": round(setup.hierarchy.finest.omega_h, 6),
    }
    if setup.cycle is not None:
        out["adr_level"] = setup.cycle.adr_level
        out["alphas"] = {int(k): float(v) for k, v in setup.alphas.items()}
    if setup.tuning is not None:
        out["tuned_loss"] = setup.tuning.loss
    return out


def run_solve(
    spec: ProblemSpec,
    alphas: Optional[dict[int, float]] = None,
    tracer: Optional[PhaseTracer] = None,
) -> SolveReport:
    """Build the chosen preconditioner and run FGMRES on the problem's right-hand side."""
    tracer = tracer or PhaseTracer(spec.name)
    logger.info("solve_started", name=spec.name, method=spec.method, omega=spec.omega)
    setup = prepare(spec, alphas, tracer)
    op = setup.operator
    with _stage(tracer, "solve"):
        _, report = fgmres(
            op.matvec, setup.preconditioner, setup.rhs.values, spec.fgmres, spec.method
        )
    report.timings = tracer.timings()
    report.spec = spec.model_dump(mode="json")
    report.details = _details(setup)
    logger.info(
        "solve_finished",
        name=spec.name,
        converged=report.converged,
        iterations=report.iterations,
        relres=report.final_relres,
    )
    return report


def tune_problem(spec: ProblemSpec, tracer: Optional[PhaseTracer] = None) -> SolverSetup:
    """Setup with tuning forced on (wave_adr and wave_ray only); configured alphas are ignored."""
    if spec.method not in ("wave_adr", "wave_ray"):
        raise SetupError("tuning", ValueError(f"method '{spec.method}' has no Chebyshev levels"))
    wave_cfg = spec.wave_adr.model_copy(update={"alphas": {}})
    return prepare(spec.model_copy(update={"wave_adr": wave_cfg}), tracer=tracer, tune=True)
