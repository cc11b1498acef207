"""Radial solver for the disc problem."""

from .radial import (
    CurvatureBoundary,
    DiscBoundary,
    RadialGrid,
    RadialProblem,
    apply_radial_log_diffusion,
    hemisphere_oracle,
    make_compatible_radial,
    radial_compatibility_residual,
    run_disc,
)

__all__ = [
    'CurvatureBoundary',
    'DiscBoundary',
    'RadialGrid',
    'RadialProblem',
    'apply_radial_log_diffusion',
    'hemisphere_oracle',
    'make_compatible_radial',
    'radial_compatibility_residual',
    'run_disc',
]
