"""
Characteristic-correction interface.

A correction maps the residual on the kh ~ 1 level to an additive update of
the iterate. The ADR correction and the Wave-Ray correction both implement it
so the wave cycle can host either one.
"""

from abc import ABC, abstractmethod

import numpy as np


class ICharacteristicCorrection(ABC):
    """Residual -> correction on a fixed level of the hierarchy."""

    @property
    @abstractmethod
    def level_index(self) -> int:
        """1-based hierarchy level the correction is applied on."""
        pass

    @abstractmethod
    def correct(self, r: np.ndarray) -> np.ndarray:
        """Correction e with A e ~ r for the characteristic error components."""
        pass

    def __call__(self, r: np.ndarray) -> np.ndarray:
        return self.correct(r)
