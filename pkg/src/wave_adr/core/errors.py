"""
Exception hierarchy for the Wave-ADR solver.

Input problems derive from ValueError, failed computations from RuntimeError,
so callers that only know the builtins still catch them.
"""

from typing import Optional


class WaveADRError(Exception):
    """Base class for every error raised by wave_adr."""


class GridMismatchError(WaveADRError, ValueError):
    """Operands live on different grids (dimension error)."""


class HierarchyError(WaveADRError, ValueError):
    """Grid size incompatible with the requested multigrid depth."""

    def __init__(self, message: str, valid_sizes: Optional[list[int]] = None):
        self.valid_sizes = valid_sizes or []
        if self.valid_sizes:
            message = f"{message}; valid sizes nearby: {self.valid_sizes}"
        super().__init__(message)


class SmootherError(WaveADRError, RuntimeError):
    """Relaxation cannot proceed on a level."""

    def __init__(self, message: str, level: Optional[int] = None):
        self.level = level
        if level is not None:
            message = f"level {level}: {message}"
        super().__init__(message)


class EikonalError(WaveADRError, ValueError):
    """Invalid source location or slowness for the fast-marching solver."""


class TuningError(WaveADRError, RuntimeError):
    """No finite loss among the Chebyshev candidates of a level."""

    def __init__(self, message: str, level: Optional[int] = None):
        self.level = level
        if level is not None:
            message = f"level {level}: {message}"
        super().__init__(message)


class IngestionError(WaveADRError, ValueError):
    """Slowness source unreadable or malformed."""


class ConfigError(WaveADRError, ValueError):
    """Malformed problem configuration."""


class SetupError(WaveADRError, RuntimeError):
    """A solve pipeline stage failed."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}' failed: {cause}")
