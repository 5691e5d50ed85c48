"""
Wave-ADR

Matrix-free multigrid preconditioning for 2D heterogeneous high-frequency
Helmholtz problems: a wave cycle with an advection-diffusion-reaction
correction on the kh ~ 1 level, inside restarted flexible GMRES.
"""

__version__ = "0.1.0"
__author__ = "Gary"
__license__ = "Apache-2.0"

from wave_adr.core.errors import WaveADRError
from wave_adr.core.fields import ComplexField, Grid2D, SlownessModel
from wave_adr.core.hierarchy import Hierarchy, build_hierarchy
from wave_adr.core.schemas.config import ProblemSpec
from wave_adr.io.report import SolveReport
from wave_adr.runtime.pipeline import run_solve

__all__ = [
    "WaveADRError",
    "ComplexField",
    "Grid2D",
    "SlownessModel",
    "Hierarchy",
    "build_hierarchy",
    "ProblemSpec",
    "SolveReport",
    "run_solve",
]
