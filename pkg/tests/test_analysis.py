import numpy as np
import pytest

from wave_adr.adr.correction import ADRCorrection
from wave_adr.adr.cycle import build_adr_levels
from wave_adr.analysis.fourier import (
    annulus_energy_fraction,
    characteristic_snapshot,
    direct_solve,
    fourier_error_spectrum,
)
from wave_adr.core.fields import Grid2D, SlownessModel, point_source
from wave_adr.core.schemas.config import WaveADRConfig
from wave_adr.eikonal.phase import solve_factored_eikonal
from wave_adr.operators.helmholtz import HelmholtzLevelOp
from wave_adr.runtime.wave_cycle import build_wave_cycle


def test_direct_solve(small_hierarchy):
    op = HelmholtzLevelOp(small_hierarchy.finest)
    g = point_source(op.grid).values
    u = direct_solve(op, g)
    assert np.linalg.norm(op.matvec(u) - g) <= 1e-10 * np.linalg.norm(g)


def test_plane_wave_on_a_bin_is_all_annulus():
    grid = Grid2D(31)
    x, y = grid.coordinates()
    freq = np.fft.fftfreq(31, d=grid.h)
    fx, fy = freq[5], freq[3]
    wave = np.exp(2j * np.pi * (fx * x + fy * y))
    radius = np.hypot(fx, fy)
    assert annulus_energy_fraction(wave, grid, radius) == pytest.approx(1.0)
    assert annulus_energy_fraction(wave, grid, 3.0 * radius) == pytest.approx(0.0, abs=1e-20)
    assert annulus_energy_fraction(np.zeros(grid.shape), grid, radius) == 0.0

    amplitude, r = fourier_error_spectrum(wave, grid)
    peak = np.unravel_index(np.argmax(amplitude), amplitude.shape)
    assert r[peak] == pytest.approx(radius)


def test_characteristic_snapshot(small_hierarchy):
    phase = solve_factored_eikonal(SlownessModel.constant(small_hierarchy.finest.grid))
    cfg = WaveADRConfig(correction_steps=2)
    correction = ADRCorrection(build_adr_levels(small_hierarchy, phase, 2))
    cycle = build_wave_cycle(small_hierarchy, correction, cfg)
    g = point_source(small_hierarchy.finest.grid).values
    reference = direct_solve(cycle.finest_operator, g)
    steps = characteristic_snapshot(cycle, g, reference, steps=2)
    assert [s.step for s in steps] == [1, 2]
    for s in steps:
        assert 0.0 <= s.before <= 1.0
        assert 0.0 <= s.after <= 1.0
        assert np.isfinite(s.relres)
