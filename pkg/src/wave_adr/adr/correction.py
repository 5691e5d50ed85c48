"""
Characteristic correction through the ADR amplitude equation:

    r_hat = r e^{i omega tau},   L a = r_hat,   e = a e^{-i omega tau}
"""

from typing import Sequence

import numpy as np

from wave_adr.adr.cycle import adr_solve_array
from wave_adr.adr.operator import ADRLevelOp
from wave_adr.core.fields import ComplexField
from wave_adr.core.interfaces.correction import ICharacteristicCorrection
from wave_adr.core.schemas.config import ADRCycleConfig


def demodulate(r: np.ndarray, tau: np.ndarray, omega: float) -> np.ndarray:
    return r * np.exp(1j * omega * tau)


def modulate(a: np.ndarray, tau: np.ndarray, omega: float) -> np.ndarray:
    return a * np.exp(-1j * omega * tau)


class ADRCorrection(ICharacteristicCorrection):
    """ADR solve on the kh ~ 1 level wrapped in the phase modulation."""

    def __init__(self, ops: Sequence[ADRLevelOp], cfg: ADRCycleConfig = ADRCycleConfig()):
        if not ops:
            raise ValueError("ADR correction needs at least one level operator")
        self.ops = list(ops)
        self.cfg = cfg
        self.omega = ops[0].omega
        self.tau = ops[0].phase.tau

    @property
    def level_index(self) -> int:
        return self.ops[0].index

    def correct(self, r: np.ndarray) -> np.ndarray:
        a = adr_solve_array(demodulate(r, self.tau, self.omega), self.ops, self.cfg)
        return modulate(a, self.tau, self.omega)


def adr_correction(r: ComplexField, correction: ADRCorrection) -> ComplexField:
    """Correction field for the residual ``r`` on the ADR level."""
    return ComplexField(r.grid, correction.correct(r.values))
