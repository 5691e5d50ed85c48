"""Core interfaces"""

from wave_adr.core.interfaces.correction import ICharacteristicCorrection
from wave_adr.core.interfaces.operator import ILevelOperator

__all__ = ["ILevelOperator", "ICharacteristicCorrection"]
