"""Implicit adaptive solvers for the logarithmic diffusion equation."""

from .events import detect_singularity
from .line1d import Line1DProblem, apply_log_diffusion, run, step_implicit
from .manufactured import ManufacturedSolution, OrderStudy, spatial_order, temporal_order
from .models import (
    DiagnosticRow,
    SingularEvent,
    SourceTerm,
    StepOutcome,
    Termination,
    Trajectory,
)
from .oracles import SechSquaredOracle

__all__ = [
    'DiagnosticRow',
    'Line1DProblem',
    'ManufacturedSolution',
    'OrderStudy',
    'SechSquaredOracle',
    'SingularEvent',
    'SourceTerm',
    'StepOutcome',
    'Termination',
    'Trajectory',
    'apply_log_diffusion',
    'detect_singularity',
    'run',
    'spatial_order',
    'step_implicit',
    'temporal_order',
]
