"""
Slowness model ingestion: image or raw grid -> N x N model in [0.25, 1].

Steps follow the order resize, smooth, normalize. Rectangular rasters are
edge-padded to a square first so the hierarchy stays square.
"""

import math
from pathlib import Path
from typing import Optional, Union

import numpy as np
from PIL import Image, UnidentifiedImageError
from scipy.interpolate import RegularGridInterpolator
from scipy.ndimage import gaussian_filter
from structlog import get_logger

from wave_adr.core.errors import IngestionError
from wave_adr.core.fields import Grid2D, SlownessModel
from wave_adr.core.schemas.config import IngestConfig
from wave_adr.io.raw import load_raw_grid

logger = get_logger(__name__)

IMAGE_SUFFIXES = {".pgm", ".png", ".pnm", ".bmp", ".tif", ".tiff"}
AUTO_OMEGA_H = 0.5
AUTO_OMEGA_H_RANGE = (0.4, 0.6)
AUTO_MULTIPLE = 8

SlownessSource = Union[float, int, str, Path]


def read_raster(path: Union[str, Path]) -> np.ndarray:
    """Grayscale image or raw grid as a float64 array (rows, cols)."""
    path = Path(path)
    if not path.exists():
        raise IngestionError(f"Slowness source '{path}' does not exist")
    if path.suffix.lower() in IMAGE_SUFFIXES:
        try:
            with Image.open(path) as img:
                data = np.asarray(img.convert("L"), dtype=np.float64)
        except (OSError, UnidentifiedImageError) as e:
            raise IngestionError(f"Cannot read image '{path}': {e}") from e
    else:
        data = load_raw_grid(path)
    if data.ndim != 2 or min(data.shape) < 1:
        raise IngestionError(f"'{path}' holds no 2D raster (shape {data.shape})")
    if not np.all(np.isfinite(data)):
        raise IngestionError(f"'{path}' contains non-finite values")
    return data


def pad_square(data: np.ndarray) -> np.ndarray:
    """Edge-pad the short side symmetrically."""
    rows, cols = data.shape
    if rows == cols:
        return data
    side = max(rows, cols)
    dr, dc = side - rows, side - cols
    return np.pad(data, ((dr // 2, dr - dr // 2), (dc // 2, dc - dc // 2)), mode="edge")


def resize_bilinear(data: np.ndarray, n: int) -> np.ndarray:
    """Bilinear resample of a square raster onto n x n nodes (corners aligned)."""
    m = data.shape[0]
    if m == n:
        return data.copy()
    if m == 1:
        return np.full((n, n), float(data[0, 0]))
    src = np.linspace(0.0, 1.0, m)
    interpolator = RegularGridInterpolator((src, src), data, method="linear")
    dst = np.linspace(0.0, 1.0, n)
    yy, xx = np.meshgrid(dst, dst, indexing="ij")
    return interpolator(np.stack([yy.ravel(), xx.ravel()], axis=-1)).reshape(n, n)


def smooth(data: np.ndarray, sigma: float, truncate: float = 3.0) -> np.ndarray:
    if sigma <= 0:
        return data
    return gaussian_filter(data, sigma=sigma, truncate=truncate, mode="nearest")


def normalize(data: np.ndarray, s_min: float = 0.25, s_max: float = 1.0) -> np.ndarray:
    """Affine map min -> s_min, max -> s_max; a constant raster maps to s_max."""
    lo, hi = float(data.min()), float(data.max())
    if hi - lo <= 1e-12 * max(abs(hi), 1.0):
        return np.full(data.shape, s_max)
    out = s_min + (data - lo) * ((s_max - s_min) / (hi - lo))
    return np.clip(out, s_min, s_max)


def _as_constant(source: SlownessSource) -> Optional[float]:
    if isinstance(source, (int, float)) and not isinstance(source, bool):
        return float(source)
    if isinstance(source, str):
        try:
            return float(source)
        except ValueError:
            return None
    return None


def ingest_slowness(
    source: SlownessSource,
    n: int,
    cfg: Optional[IngestConfig] = None,
    length: float = 1.0,
) -> SlownessModel:
    """
    Build an N x N slowness model.

    Args:
        source: constant slowness, grayscale image path or raw grid path
        n: interior nodes per side
        cfg: smoothing and normalization settings (sigma defaults to N/64 cells)
        length: physical side of the square domain

    Raises:
        IngestionError: unreadable source, non-positive N or non-finite data
    """
    cfg = cfg or IngestConfig()
    if not isinstance(n, (int, np.integer)) or n < 3:
        raise IngestionError(f"Interior node count must be an integer >= 3, got {n!r}")
    grid = Grid2D(int(n), length)

    constant = _as_constant(source)
    if constant is not None:
        if not math.isfinite(constant) or not cfg.s_min <= constant <= cfg.s_max:
            raise IngestionError(
                f"Constant slowness {constant} outside [{cfg.s_min}, {cfg.s_max}]"
            )
        logger.info("slowness_ingested", source="constant", value=constant, n=n)
        return SlownessModel.constant(grid, constant)

    raw = read_raster(source)
    square = pad_square(raw)
    resized = resize_bilinear(square, grid.n_interior)
    sigma = cfg.resolve_sigma(grid.n_interior)
    smoothed = smooth(resized, sigma, cfg.truncate)
    s = normalize(smoothed, cfg.s_min, cfg.s_max)
    logger.info(
        "slowness_ingested",
        source=str(source),
        raster=raw.shape,
        padded=raw.shape != square.shape,
        n=n,
        sigma=sigma,
    )
    return SlownessModel(grid, s)


def auto_n(omega: float, length: float = 1.0) -> int:
    """
    Interior count with omega * h close to 0.5 and N + 1 a multiple of 8.

    The multiple-of-8 adjustment keeps at least three levels in the hierarchy.
    Among the multiples with omega * h in [0.4, 0.6] the one closest to the
    ideal cell count wins; below omega ~ 10 the window may hold none.
    """
    if not omega > 0:
        raise IngestionError(f"omega must be positive, got {omega}")
    lo, hi = AUTO_OMEGA_H_RANGE
    ideal = length * omega / AUTO_OMEGA_H
    first = max(1, math.floor(length * omega / hi / AUTO_MULTIPLE))
    last = math.ceil(length * omega / lo / AUTO_MULTIPLE)
    inside = [
        AUTO_MULTIPLE * k
        for k in range(first, last + 1)
        if lo <= length * omega / (AUTO_MULTIPLE * k) <= hi
    ]
    if inside:
        cells = min(inside, key=lambda c: (abs(c - ideal), -c))
    else:
        cells = max(AUTO_MULTIPLE, AUTO_MULTIPLE * int(round(ideal / AUTO_MULTIPLE)))
    n = cells - 1
    omega_h = omega * length / cells
    if not inside:
        logger.warning("auto_n_outside_range", omega=omega, n=n, omega_h=omega_h)
    elif abs(cells - ideal) > 0.5:
        logger.info("auto_n_adjusted", ideal_cells=round(ideal, 2), n=n, omega_h=omega_h)
    return n
