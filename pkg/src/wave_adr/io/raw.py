"""
Raw grid interchange: little-endian int64 dimension header followed by
little-endian float64 values in row-major order.

Slowness grids carry a (rows, cols) header, exported phase fields a
(N, N, 1) header.
"""

from pathlib import Path
from typing import Union

import numpy as np

from wave_adr.core.errors import IngestionError

HEADER_DTYPE = np.dtype("<i8")
VALUE_DTYPE = np.dtype("<f8")


def write_raw_grid(path: Union[str, Path], values: np.ndarray, depth: int = 0) -> Path:
    """Write a 2D grid; ``depth > 0`` appends a third header entry."""
    path = Path(path)
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise ValueError(f"Raw grids are 2D, got shape {values.shape}")
    dims = list(values.shape) + ([depth] if depth else [])
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        f.write(np.asarray(dims, dtype=HEADER_DTYPE).tobytes())
        f.write(values.astype(VALUE_DTYPE).tobytes())
    return path


def load_raw_grid(path: Union[str, Path]) -> np.ndarray:
    """Read a grid written by ``write_raw_grid`` (either header length)."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise IngestionError(f"Cannot read raw grid '{path}': {e}") from e

    for n_dims in (3, 2):
        head = n_dims * HEADER_DTYPE.itemsize
        if len(data) < head:
            continue
        dims = np.frombuffer(data[:head], dtype=HEADER_DTYPE)
        if np.any(dims <= 0):
            continue
        count = int(np.prod(dims))
        if len(data) - head == count * VALUE_DTYPE.itemsize:
            values = np.frombuffer(data[head:], dtype=VALUE_DTYPE).astype(np.float64)
            rows, cols = int(dims[0]), int(dims[1])
            if n_dims == 3:
                return values.reshape(rows, cols, int(dims[2]))[:, :, 0]
            return values.reshape(rows, cols)
    raise IngestionError(f"'{path}' is not a raw grid (header and payload sizes disagree)")
