"""Compatibility of initial data with the boundary law."""

from __future__ import annotations
import logging
from typing import Tuple

import numpy as np

from ..errors import PreconditionError
from .models import Interval1D, RobinBoundary, SolutionState
from .stencils import blend_to_slopes, outward_slopes

logger = logging.getLogger(__name__)

#: Residuals below this are treated as already compatible.
EXACT_TOLERANCE = 1e-12


def boundary_targets(bc, w: np.ndarray, t: float = 0.0) -> Tuple[np.ndarray, np.ndarray]:
    """Outward slopes of w demanded by the boundary law at both ends."""
    g_lower, _ = bc.log_slope(w[0], t, -1)
    g_upper, _ = bc.log_slope(w[-1], t, 1)
    return g_lower, g_upper


def compatibility_residual(state0: SolutionState, bc: RobinBoundary,
                           dom: Interval1D) -> Tuple[float, float]:
    """Return the outward-normal residuals (at -l, at +l).

    r = d_n log u0 - 2 gamma u0^(p-1), with one-sided three-point derivatives.
    """
    w = state0.w
    if w.shape[0] != dom.n:
        raise PreconditionError(f'state has {w.shape[0]} nodes, grid has {dom.n}')
    slope_lower, slope_upper = outward_slopes(w, dom.h)
    g_lower, g_upper = boundary_targets(bc, w, state0.t)
    return float(slope_lower - g_lower), float(slope_upper - g_upper)


def default_blend_width(half_length: float, h: float) -> float:
    """Collar width used when a caller does not choose one."""
    return max(0.2 * half_length, 3.0 * h)


def check_collar(blend_width: float, half_length: float, h: float):
    if blend_width >= half_length:
        raise PreconditionError(
            f'blend_width {blend_width} must be below the half-length {half_length}'
        )
    if blend_width < 2.0 * h:
        raise PreconditionError(
            f'blend_width {blend_width} must cover at least two cells (h = {h})'
        )


def make_compatible_initial_data(profile, bc: RobinBoundary, dom: Interval1D,
                                 blend_width: float, t: float = 0.0) -> SolutionState:
    """Correct w = log(profile) inside boundary collars until the data is compatible.

    Nodes farther than blend_width from both ends are left untouched.
    """
    profile = np.asarray(profile, dtype=float)
    if profile.shape != (dom.n,):
        raise PreconditionError(f'profile has shape {profile.shape}, grid has {dom.n} nodes')
    if not np.all(profile > 0):
        raise PreconditionError('profile must be strictly positive')
    check_collar(blend_width, dom.l, dom.h)

    state = SolutionState.from_u(t, profile)
    residual = compatibility_residual(state, bc, dom)
    if max(abs(r) for r in residual) < EXACT_TOLERANCE:
        return state

    g_lower, g_upper = boundary_targets(bc, state.w, t)
    w = blend_to_slopes(state.w, dom.h, blend_width, lower=g_lower, upper=g_upper)
    logger.debug('collar correction removed residuals %s', residual)
    return SolutionState(t, w)
