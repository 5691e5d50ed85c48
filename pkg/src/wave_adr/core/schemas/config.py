"""
Configuration models for hierarchy construction, cycles, solvers and problems.
"""

import math
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator


class _Config(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DepthPolicy(_Config):
    """How deep to coarsen; None keeps halving while the coarse grid has N >= min_coarse."""
    max_levels: Optional[int] = Field(default=None, ge=1)
    min_coarse: int = Field(default=3, ge=3)


class ChebyParams(_Config):
    """Chebyshev window [lambda_max / alpha, lambda_max] on the spectrum of A*A."""
    alpha: float = Field(gt=1.0)
    lambda_max: float = Field(gt=0.0)
    q_steps: int = Field(default=5, ge=0)

    def inverse_steps(self) -> list[float]:
        """1 / beta_q: the q_steps Chebyshev roots on the window, natural order."""
        lo = self.lambda_max / self.alpha
        center = 0.5 * (self.lambda_max + lo)
        half = 0.5 * (self.lambda_max - lo)
        q = self.q_steps
        return [center + half * math.cos(math.pi * (2 * j + 1) / (2 * q)) for j in range(q)]


class ADRCycleConfig(_Config):
    """Auxiliary V-cycle for the amplitude equation."""
    smoother_steps: int = Field(default=3, ge=1)
    coarsest_steps: int = Field(default=10, ge=1)
    cycles: int = Field(default=1, ge=1)
    target: float = Field(default=0.1, gt=0.0, lt=1.0)
    scheme: Literal["upwind", "central"] = "upwind"
    # levels past this omega*h are dropped; None keeps the whole hierarchy
    max_omega_h: Optional[float] = Field(default=2.5, gt=0.0)
    coarsest: Literal["direct", "gmres"] = "direct"
    solver: Literal["vcycle", "direct"] = "vcycle"


class WaveADRConfig(_Config):
    """Wave cycle schedule plus ADR correction at the kh ~ 1 level."""
    adr_level: Optional[int] = Field(default=None, ge=1)
    correction_steps: int = Field(default=8, ge=0)
    level3_post_smoothing: bool = True
    jacobi_steps: int = Field(default=1, ge=0)
    smoothing_steps: int = Field(default=5, ge=0)
    coarsest_steps: int = Field(default=10, ge=0)
    default_alpha: float = Field(default=3.0, gt=1.0)
    alphas: dict[int, float] = Field(default_factory=dict)
    power_iterations: int = Field(default=30, ge=1)
    lambda_seed: int = 0
    adr: ADRCycleConfig = Field(default_factory=ADRCycleConfig)

    @field_validator("alphas")
    @classmethod
    def _alphas_above_one(cls, value: dict[int, float]) -> dict[int, float]:
        for level, alpha in value.items():
            if not alpha > 1.0:
                raise ValueError(f"alpha for level {level} must exceed 1, got {alpha}")
        return value


class FgmresConfig(_Config):
    restart: int = Field(default=20, ge=1)
    tol: float = Field(default=1e-6, gt=0.0)
    max_iter: int = Field(default=2000, ge=1)


class CslConfig(_Config):
    """Shifted Laplacian -Delta - omega^2 s^2 + i beta, inverted by one V-cycle."""
    beta: Optional[float] = Field(default=None, gt=0.0)
    beta_factor: float = Field(default=0.5, gt=0.0)
    jacobi_weight: float = Field(default=2.0 / 3.0, gt=0.0)
    coarsest_steps: int = Field(default=10, ge=1)

    def resolve_beta(self, omega: float) -> float:
        return self.beta if self.beta is not None else self.beta_factor * omega**2


class WaveRayConfig(_Config):
    directions: int = Field(default=8, ge=1)
    ray_equation: Literal["printed", "consistent"] = "consistent"
    adr: ADRCycleConfig = Field(default_factory=ADRCycleConfig)


class TunerConfig(_Config):
    """Derivative-free search for the per-level Chebyshev alpha."""
    K: int = Field(default=3, ge=1)
    candidates: list[float] = Field(default_factory=lambda: [1.2, 2.0, 3.0, 4.6, 7.1, 10.0, 30.0])
    golden_passes: int = Field(default=2, ge=0)
    sweeps: int = Field(default=1, ge=1)
    uniform_defaults: list[float] = Field(default_factory=lambda: [3.0, 10.0, 30.0])

    @field_validator("candidates")
    @classmethod
    def _strictly_increasing(cls, value: list[float]) -> list[float]:
        if not value:
            raise ValueError("candidate grid is empty")
        if any(a <= 1.0 for a in value):
            raise ValueError("every candidate alpha must exceed 1")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("candidate grid must be strictly increasing")
        return value


class IngestConfig(_Config):
    """Resize -> Gaussian smoothing -> affine normalization."""
    sigma: Optional[float] = Field(default=None, ge=0.0)
    truncate: float = Field(default=3.0, gt=0.0)
    s_min: float = Field(default=0.25, gt=0.0)
    s_max: float = Field(default=1.0, gt=0.0)

    def resolve_sigma(self, n: int) -> float:
        return self.sigma if self.sigma is not None else n / 64.0


ShiftPolicy = Literal["none", "0.01k2"]
Method = Literal["wave_adr", "wave_ray", "csl", "unpreconditioned"]


class ProblemSpec(_Config):
    """One Helmholtz solve: medium, discretization, source and solver choice."""
    name: str = "problem"
    omega: float = Field(gt=0.0)
    slowness: Union[float, str] = 1.0
    n: Union[int, Literal["auto"]] = "auto"
    source: Union[Literal["center", "random"], tuple[float, float]] = "center"
    shift0: ShiftPolicy = "none"
    method: Method = "wave_adr"
    seed: int = 0
    depth: DepthPolicy = Field(default_factory=DepthPolicy)
    ingest: IngestConfig = Field(default_factory=IngestConfig)
    fgmres: FgmresConfig = Field(default_factory=FgmresConfig)
    wave_adr: WaveADRConfig = Field(default_factory=WaveADRConfig)
    wave_ray: WaveRayConfig = Field(default_factory=WaveRayConfig)
    csl: CslConfig = Field(default_factory=CslConfig)
    tuner: Union[TunerConfig, Literal["defaults"]] = Field(default_factory=TunerConfig)

    @field_validator("n")
    @classmethod
    def _n_at_least_three(cls, value):
        if value != "auto" and value < 3:
            raise ValueError(f"n must be >= 3 or 'auto', got {value}")
        return value

    @property
    def shift_factor(self) -> float:
        return 0.01 if self.shift0 == "0.01k2" else 0.0
