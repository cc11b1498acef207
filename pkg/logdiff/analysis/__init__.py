"""Rate fits, moments, mass bounds, comparison runs and invariant monitors."""

from .bounds import (
    BoundCheck,
    check_mass_bound_blowdown,
    check_mass_bound_blowup,
    mass_bound_blowdown_slack,
    mass_bound_blowup_slack,
)
from .comparison import ComparisonReport, comparison_harness
from .fitting import RateFit, RateModel, default_window, fit_rate, fit_trajectory
from .moments import MomentSeries, MomentSlack, moment_inequality_slack, moment_series
from .monitors import (
    SignReport,
    area_convexity_slack,
    curvature_envelope_slack,
    decay_floor,
    flatness_ratio,
    gauss_bonnet_relative_residual,
    growth_ceiling,
    mass_law_relative_residual,
    mass_law_residual,
    sign_preservation,
)

__all__ = [
    'BoundCheck',
    'ComparisonReport',
    'MomentSeries',
    'MomentSlack',
    'RateFit',
    'RateModel',
    'SignReport',
    'area_convexity_slack',
    'check_mass_bound_blowdown',
    'check_mass_bound_blowup',
    'comparison_harness',
    'curvature_envelope_slack',
    'decay_floor',
    'default_window',
    'fit_rate',
    'fit_trajectory',
    'flatness_ratio',
    'gauss_bonnet_relative_residual',
    'growth_ceiling',
    'mass_bound_blowdown_slack',
    'mass_bound_blowup_slack',
    'mass_law_relative_residual',
    'mass_law_residual',
    'moment_inequality_slack',
    'moment_series',
    'sign_preservation',
]
