"""
Error diagnostics for the characteristic-error experiments.

Errors are measured against a sparse direct solve and inspected in the
discrete Fourier domain: characteristic components concentrate on the
annulus |xi| ~ omega / 2 pi (cycles per unit length).
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg as spla
from structlog import get_logger

from wave_adr.core.fields import Grid2D
from wave_adr.core.interfaces.operator import ILevelOperator
from wave_adr.runtime.wave_cycle import WaveADRCycle

logger = get_logger(__name__)

DEFAULT_BAND = (0.8, 1.2)


def direct_solve(op: ILevelOperator, g: np.ndarray) -> np.ndarray:
    """Reference solution by sparse LU on the assembled operator."""
    g = np.asarray(g, dtype=np.complex128)
    u = spla.spsolve(op.to_sparse().tocsc(), g.ravel())
    return np.asarray(u, dtype=np.complex128).reshape(g.shape)


def fourier_error_spectrum(error: np.ndarray, grid: Grid2D) -> tuple[np.ndarray, np.ndarray]:
    """(|F(e)|, |xi|) on the fft2 layout, xi in cycles per unit length."""
    amplitude = np.abs(np.fft.fft2(error))
    freq = np.fft.fftfreq(grid.n_interior, d=grid.h)
    radius = np.hypot(freq[:, None], freq[None, :])
    return amplitude, radius


def annulus_energy_fraction(
    error: np.ndarray,
    grid: Grid2D,
    frequency: float,
    band: tuple[float, float] = DEFAULT_BAND,
) -> float:
    """Share of sum |F(e)|^2 with band[0] f <= |xi| <= band[1] f."""
    amplitude, radius = fourier_error_spectrum(error, grid)
    energy = amplitude**2
    total = float(energy.sum())
    if total == 0.0:
        return 0.0
    mask = (radius >= band[0] * frequency) & (radius <= band[1] * frequency)
    return float(energy[mask].sum()) / total


@dataclass
class SnapshotStep:
    step: int
    before: float
    after: float
    relres: float


def characteristic_snapshot(
    cycle: WaveADRCycle,
    g: np.ndarray,
    reference: np.ndarray,
    steps: int = 1,
    band: tuple[float, float] = DEFAULT_BAND,
) -> list[SnapshotStep]:
    """
    Annulus fractions of the error after each cycle with and without the correction.

    ``before`` comes from the same cycle with zero correction steps started
    from the current iterate; the iteration itself continues with the full cycle.
    """
    grid = cycle.hierarchy.finest.grid
    frequency = cycle.hierarchy.omega / (2.0 * np.pi)
    plain = cycle.with_correction_steps(0)
    op = cycle.finest_operator
    g = np.asarray(g, dtype=np.complex128)
    norm_g = float(np.linalg.norm(g))
    u = np.zeros_like(g)
    out = []
    for k in range(1, steps + 1):
        before = annulus_energy_fraction(reference - plain(g, u), grid, frequency, band)
        u = cycle(g, u)
        after = annulus_energy_fraction(reference - u, grid, frequency, band)
        relres = float(np.linalg.norm(g - op.matvec(u))) / norm_g
        out.append(SnapshotStep(step=k, before=before, after=after, relres=relres))
        logger.debug("characteristic_snapshot", step=k, before=before, after=after)
    return out
