"""Conformal dictionary: curvature, area, length and metric profiles."""

from .curvature import (
    AreaLengthReport,
    GeometricDiagnostics,
    area,
    area_law_residual,
    area_length_check,
    boundary_average_curvature,
    boundary_length,
    curvature_envelope,
    curvature_field,
    curvature_profile_monotone,
    gauss_bonnet_residual,
    geodesic_half_length,
    geometric_diagnostics,
    length_law_residual,
    reconstruct_from_curvature,
)
from .profiles import (
    EXAMPLE_HALF_LENGTH,
    ConformalProfile,
    MetricProfile,
    compatibility_function,
    conformal_interval,
    example_profile,
    find_compatible_length,
    profile_to_conformal,
)

__all__ = [
    'AreaLengthReport',
    'ConformalProfile',
    'EXAMPLE_HALF_LENGTH',
    'GeometricDiagnostics',
    'MetricProfile',
    'area',
    'area_law_residual',
    'area_length_check',
    'boundary_average_curvature',
    'boundary_length',
    'compatibility_function',
    'conformal_interval',
    'curvature_envelope',
    'curvature_field',
    'curvature_profile_monotone',
    'example_profile',
    'find_compatible_length',
    'gauss_bonnet_residual',
    'geodesic_half_length',
    'geometric_diagnostics',
    'length_law_residual',
    'profile_to_conformal',
    'reconstruct_from_curvature',
]
