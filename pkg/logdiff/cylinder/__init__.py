"""Solver on the cylinder with angle-dependent boundary curvature."""

from .envelopes import EnvelopeReport, EnvelopeRow, run_cylinder
from .grid import BoundaryCurvature, CylinderGrid
from .linear import thomas_batched
from .solver2d import (
    CylinderProblem,
    apply_log_diffusion_2d,
    compatibility_residual_2d,
    integrate_cylinder,
    make_compatible_2d,
)

__all__ = [
    'BoundaryCurvature',
    'CylinderGrid',
    'CylinderProblem',
    'EnvelopeReport',
    'EnvelopeRow',
    'apply_log_diffusion_2d',
    'compatibility_residual_2d',
    'integrate_cylinder',
    'make_compatible_2d',
    'run_cylinder',
    'thomas_batched',
]
