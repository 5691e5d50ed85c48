import math

import numpy as np
import pytest

from wave_adr.adr.operator import ADRLevelOp, advection_stencil
from wave_adr.core.fields import point_source
from wave_adr.core.schemas.config import CslConfig, FgmresConfig, WaveRayConfig
from wave_adr.eikonal.phase import PhaseField
from wave_adr.krylov.csl import CSLCycle, csl_preconditioner
from wave_adr.krylov.fgmres import fgmres
from wave_adr.krylov.wave_ray import (
    RayLevelOp,
    WaveRayCorrection,
    ray_directions,
    wave_ray_preconditioner,
)
from wave_adr.operators.helmholtz import HelmholtzLevelOp
from wave_adr.operators.stencil import laplacian_stencil


def test_ray_directions():
    dirs = ray_directions(4)
    assert np.allclose(dirs, [(1, 0), (0, 1), (-1, 0), (0, -1)], atol=1e-15)
    assert all(math.hypot(*k) == pytest.approx(1.0) for k in ray_directions(7))
    with pytest.raises(ValueError):
        ray_directions(0)


def test_consistent_ray_equation_is_adr_with_linear_phase(small_hierarchy, random_complex):
    lvl = small_hierarchy.level(2)
    k = (math.cos(0.3), math.sin(0.3))
    ray = RayLevelOp(lvl, k, "consistent")
    adr = ADRLevelOp(lvl, PhaseField.linear(lvl.grid, k))
    u = random_complex(lvl.grid.shape)
    assert np.allclose(ray.matvec(u), adr.matvec(u))
    assert ray.index == 2


def test_printed_ray_equation(small_hierarchy, random_complex):
    lvl = small_hierarchy.level(2)
    k = (0.0, -1.0)
    ray = RayLevelOp(lvl, k, "printed")
    u = random_complex(lvl.grid.shape)
    phase = PhaseField.linear(lvl.grid, k)
    expected = (
        -laplacian_stencil(lvl.grid).matvec(u)
        + 2j * lvl.omega * advection_stencil(phase).matvec(u)
        + 1j * lvl.omega * lvl.gamma * lvl.s2 * u
    )
    assert np.allclose(ray.matvec(u), expected)
    with pytest.raises(ValueError):
        RayLevelOp(lvl, k, "eikonal")


def test_wave_ray_correction_sums_directions(small_hierarchy, random_complex):
    correction = WaveRayCorrection(small_hierarchy, 2, WaveRayConfig(directions=3))
    assert correction.level_index == 2
    assert len(correction.rays) == 3
    assert [op.index for op in correction.rays[0]] == [2, 3]
    assert all(op.equation == "consistent" for op in correction.rays[0])
    r = random_complex((15, 15))
    assert np.allclose(correction.correct(2.0 * r), 2.0 * correction.correct(r))
    assert np.all(correction.correct(np.zeros((15, 15))) == 0)


def test_printed_ray_equation_is_selectable(small_hierarchy, random_complex):
    cfg = WaveRayConfig(directions=2, ray_equation="printed")
    correction = WaveRayCorrection(small_hierarchy, 2, cfg)
    assert all(op.equation == "printed" for op in correction.rays[1])
    assert np.all(np.isfinite(correction.correct(random_complex((15, 15)))))


def test_csl_shift(small_hierarchy):
    cycle = csl_preconditioner(small_hierarchy)
    assert cycle.beta == pytest.approx(0.5 * 16.0**2)
    assert csl_preconditioner(small_hierarchy, beta=3.0).beta == 3.0
    assert csl_preconditioner(small_hierarchy, cfg=CslConfig(beta_factor=1.0)).beta == 256.0
    assert all(op.beta == cycle.beta for op in cycle.operators)
    with pytest.raises(ValueError):
        CSLCycle(small_hierarchy, 0.0)


def test_csl_cycle_is_homogeneous(small_hierarchy, random_complex):
    # GMRES on the coarsest level makes the cycle homogeneous, not linear
    cycle = csl_preconditioner(small_hierarchy)
    r = random_complex((31, 31))
    assert np.allclose(cycle((2.0 - 1j) * r), (2.0 - 1j) * cycle(r))


@pytest.mark.parametrize("method", ["csl", "wave_ray"])
def test_baselines_precondition_fgmres(method, small_hierarchy):
    lvl = small_hierarchy.finest
    a = HelmholtzLevelOp(lvl)
    if method == "csl":
        precond = csl_preconditioner(small_hierarchy)
    else:
        precond = wave_ray_preconditioner(small_hierarchy, WaveRayConfig(directions=4))
    g = point_source(lvl.grid).values
    u, report = fgmres(a.matvec, precond, g, FgmresConfig(max_iter=300), method=method)
    assert report.converged
    assert np.linalg.norm(g - a.matvec(u)) / np.linalg.norm(g) < 1e-6
