"""
Advection-diffusion-reaction operator for the ray amplitude a in u = a e^{-i omega tau}:

    -lap a + 2 i omega grad tau . grad a + i omega (lap tau) a
        + omega^2 (|grad tau|^2 - s^2) a + i omega gamma s^2 a + i gamma_0 a

The advection term is discretized per axis with first-order upwind
differences chosen by the sign of tau_x, tau_y at each node (central
differences are kept for the ablation runs).
"""

from typing import Literal

import numpy as np

from wave_adr.core.errors import GridMismatchError
from wave_adr.core.fields import ComplexField
from wave_adr.core.hierarchy import Level
from wave_adr.eikonal.phase import PhaseField
from wave_adr.operators.stencil import StencilOperator, laplacian_stencil

Scheme = Literal["upwind", "central"]


def advection_stencil(phase: PhaseField, scheme: Scheme = "upwind") -> StencilOperator:
    """Discrete grad tau . grad with zero row sums."""
    h = phase.grid.h
    tx, ty = phase.tau_x, phase.tau_y
    if scheme == "upwind":
        ax, ay = np.abs(tx), np.abs(ty)
        return StencilOperator(
            phase.grid,
            center=(ax + ay) / h,
            west=-(tx + ax) / (2.0 * h),
            east=(tx - ax) / (2.0 * h),
            south=-(ty + ay) / (2.0 * h),
            north=(ty - ay) / (2.0 * h),
        )
    if scheme == "central":
        return StencilOperator(
            phase.grid,
            center=np.zeros(phase.grid.shape),
            west=-tx / (2.0 * h),
            east=tx / (2.0 * h),
            south=-ty / (2.0 * h),
            north=ty / (2.0 * h),
        )
    raise ValueError(f"Unknown advection scheme '{scheme}'")


class ADRLevelOp(StencilOperator):
    """Composite ADR stencil on one level; ``advection`` keeps the bare grad tau . grad part."""

    def __init__(self, level: Level, phase: PhaseField, scheme: Scheme = "upwind"):
        if phase.grid != level.grid:
            raise GridMismatchError(
                f"Phase on N={phase.grid.n_interior}, level {level.index} on "
                f"N={level.grid.n_interior}"
            )
        self.level = level
        self.phase = phase
        self.scheme = scheme
        self.omega = level.omega
        self.advection = advection_stencil(phase, scheme)

        omega = level.omega
        reaction = (
            1j * omega * phase.lap_tau
            + omega**2 * (phase.grad_norm2 - level.s2)
            + 1j * omega * level.gamma * level.s2
            + 1j * level.shift
        )
        composite = laplacian_stencil(level.grid) + self.advection.scaled(2j * omega)
        super().__init__(
            level.grid,
            composite.center + reaction,
            composite.west,
            composite.east,
            composite.south,
            composite.north,
        )

    @property
    def index(self) -> int:
        return self.level.index


def build_adr_op(level: Level, phase: PhaseField, scheme: Scheme = "upwind") -> ADRLevelOp:
    if phase is None:
        raise ValueError("ADR operator needs phase data")
    return ADRLevelOp(level, phase, scheme)


def apply_variable_stencil(op: StencilOperator, a: ComplexField) -> ComplexField:
    """sum_j c^j * shift_j(a) with zero padding outside the frame."""
    return op.apply(a)


def check_peclet(op: ADRLevelOp) -> float:
    """2 omega h max(|tau_x|, |tau_y|); at most 2 keeps central differences stable."""
    phase = op.phase
    peak = max(float(np.max(np.abs(phase.tau_x))), float(np.max(np.abs(phase.tau_y))))
    return 2.0 * op.omega * op.grid.h * peak
