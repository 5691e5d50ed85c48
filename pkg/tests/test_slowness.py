import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from PIL import Image

from wave_adr.core.errors import IngestionError
from wave_adr.core.schemas.config import IngestConfig
from wave_adr.io.raw import write_raw_grid
from wave_adr.io.slowness import auto_n, ingest_slowness, pad_square, resize_bilinear

NO_SMOOTHING = IngestConfig(sigma=0.0)


def _write_pgm(path, data):
    Image.fromarray(np.asarray(data, dtype=np.uint8)).save(path)
    return path


@pytest.mark.parametrize("source", [0.5, 1, "0.25"])
def test_constant_slowness(source):
    model = ingest_slowness(source, 15)
    assert model.grid.n_interior == 15
    assert np.all(model.s == float(source))


@pytest.mark.parametrize("source", [0.1, 2.0, float("nan")])
def test_constant_outside_physical_range(source):
    with pytest.raises(IngestionError):
        ingest_slowness(source, 15)


def test_node_count_is_checked():
    with pytest.raises(IngestionError):
        ingest_slowness(1.0, 2)


def test_grayscale_image_is_normalized(tmp_path, rng):
    data = rng.integers(0, 256, size=(40, 40))
    data[0, 0], data[-1, -1] = 0, 255
    model = ingest_slowness(_write_pgm(tmp_path / "m.pgm", data), 63)
    assert model.s.shape == (63, 63)
    assert model.s.min() == pytest.approx(0.25)
    assert model.s.max() == pytest.approx(1.0)
    assert model.in_physical_range


def test_constant_image_maps_to_unit_slowness(tmp_path):
    path = _write_pgm(tmp_path / "flat.png", np.full((20, 20), 77))
    assert np.all(ingest_slowness(path, 31).s == 1.0)


def test_same_size_raster_is_only_rescaled(tmp_path, rng):
    data = rng.uniform(2.0, 5.0, size=(15, 15))
    path = write_raw_grid(tmp_path / "m.raw", data)
    s = ingest_slowness(path, 15, NO_SMOOTHING).s
    expected = 0.25 + 0.75 * (data - data.min()) / (data.max() - data.min())
    assert np.allclose(s, expected)


def test_smoothing_narrows_the_range_before_normalization(tmp_path, rng):
    data = rng.uniform(0.0, 1.0, size=(31, 31))
    path = write_raw_grid(tmp_path / "noise.raw", data)
    rough = ingest_slowness(path, 31, NO_SMOOTHING).s
    smooth = ingest_slowness(path, 31, IngestConfig(sigma=2.0)).s
    assert np.abs(np.diff(smooth, axis=1)).mean() < np.abs(np.diff(rough, axis=1)).mean()


def test_rectangular_rasters_are_padded():
    data = np.arange(12.0).reshape(3, 4)
    square = pad_square(data)
    assert square.shape == (4, 4)
    assert np.array_equal(square[:3], data)
    assert np.array_equal(square[3], data[2])
    tall = pad_square(data.T)
    assert tall.shape == (4, 4)
    assert np.array_equal(tall[:, :3], data.T)
    assert np.array_equal(tall[:, 3], data.T[:, 2])


def test_bilinear_resize_keeps_linear_fields():
    x = np.linspace(0.0, 1.0, 9)
    plane = 2.0 * x[None, :] + 3.0 * x[:, None]
    out = resize_bilinear(plane, 17)
    y = np.linspace(0.0, 1.0, 17)
    assert np.allclose(out, 2.0 * y[None, :] + 3.0 * y[:, None])
    assert np.array_equal(resize_bilinear(plane, 9), plane)


def test_bad_sources(tmp_path):
    with pytest.raises(IngestionError):
        ingest_slowness(tmp_path / "missing.pgm", 15)
    data = np.ones((5, 5))
    data[2, 2] = np.nan
    with pytest.raises(IngestionError):
        ingest_slowness(write_raw_grid(tmp_path / "nan.raw", data), 15)
    garbage = tmp_path / "garbage.raw"
    garbage.write_bytes(b"not a grid")
    with pytest.raises(IngestionError):
        ingest_slowness(garbage, 15)


@pytest.mark.parametrize("omega, n", [(20 * np.pi, 127), (10 * np.pi, 63), (10.0, 23), (1.0, 7)])
def test_auto_n(omega, n):
    assert auto_n(omega) == n


@settings(max_examples=100)
@given(omega=st.floats(10.0, 500.0))
def test_auto_n_keeps_omega_h_near_half(omega):
    n = auto_n(omega)
    assert (n + 1) % 8 == 0
    assert 0.4 <= omega / (n + 1) <= 0.6
