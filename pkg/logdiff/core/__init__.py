"""Grid, boundary, state and configuration types."""

from .models import Interval1D, RobinBoundary, SolutionState, SolverConfig
from .compatibility import (
    boundary_targets,
    check_collar,
    compatibility_residual,
    default_blend_width,
    make_compatible_initial_data,
)
from .stencils import LOG_LAPLACIAN, GhostStencil, blend_to_slopes, collar_profile, outward_slopes

__all__ = [
    'GhostStencil',
    'Interval1D',
    'LOG_LAPLACIAN',
    'RobinBoundary',
    'SolutionState',
    'SolverConfig',
    'blend_to_slopes',
    'boundary_targets',
    'check_collar',
    'collar_profile',
    'compatibility_residual',
    'default_blend_width',
    'make_compatible_initial_data',
    'outward_slopes',
]
