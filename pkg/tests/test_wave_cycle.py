import numpy as np
import pytest

from wave_adr.adr.correction import ADRCorrection
from wave_adr.adr.cycle import build_adr_levels
from wave_adr.core.errors import ConfigError
from wave_adr.core.fields import ComplexField, SlownessModel
from wave_adr.core.schemas.config import WaveADRConfig
from wave_adr.eikonal.phase import solve_factored_eikonal
from wave_adr.runtime.wave_cycle import (
    as_preconditioner,
    build_wave_cycle,
    select_adr_level,
    solve_stationary,
    wave_adr_cycle,
)


def _adr_cycle(hierarchy, **cfg):
    cfg = WaveADRConfig(**cfg)
    phase = solve_factored_eikonal(SlownessModel.constant(hierarchy.finest.grid))
    correction = ADRCorrection(build_adr_levels(hierarchy, phase, 2), cfg.adr)
    return build_wave_cycle(hierarchy, correction, cfg)


def test_select_adr_level(small_hierarchy, hierarchy_factory):
    assert select_adr_level(small_hierarchy) == 2
    assert select_adr_level(small_hierarchy, 3) == 3
    with pytest.raises(ConfigError):
        select_adr_level(small_hierarchy, 4)
    with pytest.raises(ConfigError):
        select_adr_level(small_hierarchy, 0)
    # omega*h = 1/16, 1/8, 1/4: nothing in the window, closest level wins
    assert select_adr_level(hierarchy_factory(omega=2.0)) == 3


def test_pure_wave_cycle_is_linear(small_hierarchy, random_complex):
    cycle = build_wave_cycle(small_hierarchy, None, WaveADRConfig(correction_steps=0))
    g1, g2 = random_complex((31, 31)), random_complex((31, 31))
    a, b = 1.5 + 0.5j, -2.0
    combined = cycle(a * g1 + b * g2)
    separate = a * cycle(g1) + b * cycle(g2)
    assert np.allclose(combined, separate, rtol=1e-9, atol=1e-12 * np.abs(separate).max())


def test_adr_cycle_is_homogeneous(small_hierarchy, random_complex):
    cycle = _adr_cycle(small_hierarchy, correction_steps=2)
    assert cycle.adr_level == 2
    g = random_complex((31, 31))
    c = 0.3 - 2.0j
    out = cycle(g)
    assert np.allclose(cycle(c * g), c * out, rtol=1e-8, atol=1e-12 * np.abs(out).max())


def test_skip_rules(small_hierarchy, random_complex):
    cycle = _adr_cycle(small_hierarchy, level3_post_smoothing=False)
    g = random_complex((7, 7))
    u = random_complex((7, 7))
    assert cycle.schedule.skip_pre == 3
    assert np.array_equal(cycle.pre_smooth(3, g, u), u)
    assert np.array_equal(cycle.post_smooth(3, g, u), u)
    assert not np.array_equal(cycle.pre_smooth(4, g[:3, :3], u[:3, :3]), u[:3, :3])


def test_variants_share_setup(small_hierarchy):
    cycle = _adr_cycle(small_hierarchy)
    tuned = cycle.with_alphas({2: 10.0, 4: 1.5})
    assert tuned.schedule.alphas == {2: 10.0, 3: 3.0, 4: 1.5}
    assert cycle.schedule.alphas == {2: 3.0, 3: 3.0, 4: 3.0}
    assert tuned.operators is cycle.operators
    assert tuned.correction is cycle.correction

    bare = cycle.with_correction_steps(0)
    assert bare.cfg.correction_steps == 0
    assert cycle.cfg.correction_steps == 8


def test_correction_level_must_match(small_hierarchy):
    phase = solve_factored_eikonal(SlownessModel.constant(small_hierarchy.finest.grid))
    correction = ADRCorrection(build_adr_levels(small_hierarchy, phase, 3))
    with pytest.raises(ConfigError):
        build_wave_cycle(small_hierarchy, correction, WaveADRConfig(), adr_level=2)


def test_preconditioner_and_field_entry(small_hierarchy, random_complex):
    cycle = build_wave_cycle(small_hierarchy, None, WaveADRConfig())
    g = random_complex((31, 31))
    apply = as_preconditioner(cycle)
    assert np.array_equal(apply(g), cycle(g))
    grid = small_hierarchy.finest.grid
    out = wave_adr_cycle(cycle, ComplexField(grid, g), ComplexField.zeros(grid))
    assert np.array_equal(out.values, cycle(g))


def test_stationary_iteration_on_low_frequency(hierarchy_factory, random_complex):
    h = hierarchy_factory(omega=2.0)
    cycle = build_wave_cycle(h, None, WaveADRConfig())
    g = random_complex((31, 31))
    u, history = solve_stationary(cycle, g, max_cycles=30)
    assert history[0] == 1.0
    assert history[-1] < 0.1
    assert len(history) <= 31
    assert u.shape == g.shape

    zero, zero_history = solve_stationary(cycle, np.zeros_like(g))
    assert zero_history == [0.0]
    assert np.all(zero == 0.0)
