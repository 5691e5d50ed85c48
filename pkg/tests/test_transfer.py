import numpy as np
import pytest

from wave_adr.core.errors import GridMismatchError
from wave_adr.core.fields import ComplexField, Grid2D
from wave_adr.operators.transfer import (
    inject_array,
    prolong,
    prolong_array,
    restrict,
    restrict_array,
)


@pytest.mark.parametrize("n", [15, 31, 63])
def test_prolongation_is_four_times_restriction_adjoint(n, random_complex):
    nc = (n - 1) // 2
    for _ in range(20):
        x = random_complex((nc, nc))
        y = random_complex((n, n))
        lhs = np.vdot(prolong_array(x), y)
        rhs = 4.0 * np.vdot(x, restrict_array(y))
        assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_restriction_weights():
    fine = np.zeros((7, 7))
    fine[3, 3] = 16.0
    coarse = restrict_array(fine)
    assert coarse.shape == (3, 3)
    assert coarse[1, 1] == pytest.approx(4.0)
    assert coarse.sum() == pytest.approx(4.0)

    fine = np.zeros((7, 7))
    fine[2, 2] = 16.0
    coarse = restrict_array(fine)
    assert np.allclose(coarse[:2, :2], 1.0)
    assert coarse.sum() == pytest.approx(4.0)


def test_prolongation_interpolates_smooth_functions():
    coarse_grid = Grid2D(7)
    fine_grid = Grid2D(15)
    xc, yc = coarse_grid.coordinates()
    xf, yf = fine_grid.coordinates()
    # coincident nodes copy the coarse values
    fc = xc * (1 - xc) * yc * (1 - yc)
    fine = prolong_array(fc)
    assert np.allclose(fine[1::2, 1::2], fc)
    ff = xf * (1 - xf) * yf * (1 - yf)
    assert np.max(np.abs(fine - ff)) < 0.02


def test_injection_picks_coincident_nodes():
    fine = np.arange(49.0).reshape(7, 7)
    assert np.array_equal(inject_array(fine), fine[1::2, 1::2])
    assert inject_array(fine).shape == (3, 3)


def test_field_transfer_checks_grids():
    r = ComplexField.full(Grid2D(15), 1.0)
    rc = restrict(r)
    assert rc.grid == Grid2D(7)
    assert prolong(rc, Grid2D(15)).grid == Grid2D(15)
    with pytest.raises(GridMismatchError):
        prolong(rc, Grid2D(31))
    with pytest.raises(GridMismatchError):
        restrict_array(np.zeros((8, 8)))
