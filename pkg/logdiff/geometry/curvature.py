"""Curvature, area and boundary-length diagnostics of the metric u (dx^2 + dtheta^2)."""

from __future__ import annotations
from dataclasses import dataclass
import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..core.compatibility import boundary_targets
from ..core.models import Interval1D, RobinBoundary, SolutionState
from ..core.stencils import LOG_LAPLACIAN, GhostStencil, interior_second_difference
from ..errors import PreconditionError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


@dataclass
class GeometricDiagnostics:
    """Curvature field and global quantities of one state."""
    R: np.ndarray
    R_min: float
    R_max: float
    A: float
    L: float
    r_boundary: float
    gb_residual: float
    area_rate: float

    def to_dict(self) -> dict:
        return {
            'R_min': self.R_min,
            'R_max': self.R_max,
            'A': self.A,
            'L': self.L,
            'r_boundary': self.r_boundary,
            'gb_residual': self.gb_residual,
            'area_rate': self.area_rate,
        }


@dataclass
class AreaLengthReport:
    """Outcome of the area against boundary-length inequality."""
    applicable: bool
    holds: Optional[bool] = None
    slack: Optional[float] = None
    reason: str = ''

    def to_dict(self) -> dict:
        return {
            'applicable': self.applicable,
            'holds': self.holds,
            'slack': self.slack,
            'reason': self.reason,
        }


def log_laplacian(state: SolutionState, bc, dom: Interval1D,
                  stencil: GhostStencil = LOG_LAPLACIAN) -> np.ndarray:
    """Discrete d_xx log u with the boundary law folded into the end rows."""
    g_lower, g_upper = boundary_targets(bc, state.w, state.t)
    return stencil.apply(state.w, dom.h, g_lower, g_upper)


def curvature_field(state: SolutionState, bc: RobinBoundary, dom: Interval1D) -> np.ndarray:
    """R = -d_xx log u / u on every node, boundary rows included."""
    return -log_laplacian(state, bc, dom) / state.u


def area(state: SolutionState, dom: Interval1D) -> float:
    return float(TWO_PI * np.dot(dom.weights, state.u))


def boundary_length(state: SolutionState, dom: Interval1D) -> float:
    u = state.u
    return float(TWO_PI * (math.sqrt(u[0]) + math.sqrt(u[-1])))


def boundary_curvatures(state: SolutionState, bc) -> Tuple[float, float]:
    """Geodesic curvature of the two boundary circles, k = g / (2 sqrt(u))."""
    g_lower, g_upper = boundary_targets(bc, state.w, state.t)
    return (float(g_lower * np.exp(-0.5 * state.w[0]) / 2.0),
            float(g_upper * np.exp(-0.5 * state.w[-1]) / 2.0))


def boundary_average_curvature(state: SolutionState, bc, dom: Interval1D) -> float:
    """Mean of R over the boundary with respect to arclength."""
    R = curvature_field(state, bc, dom)
    root = np.sqrt(state.u[[0, -1]])
    return float(np.dot(root, R[[0, -1]]) / root.sum())


def gauss_bonnet_residual(state: SolutionState, bc, dom: Interval1D) -> float:
    """Integral of R dA plus twice the integral of k ds; zero on a cylinder."""
    lap = log_laplacian(state, bc, dom)
    int_R_dA = -TWO_PI * float(np.dot(dom.weights, lap))
    k_lower, k_upper = boundary_curvatures(state, bc)
    root = np.sqrt(state.u[[0, -1]])
    int_k_ds = TWO_PI * (k_lower * root[0] + k_upper * root[1])
    return int_R_dA + 2.0 * int_k_ds


def geometric_diagnostics(state: SolutionState, bc, dom: Interval1D) -> GeometricDiagnostics:
    lap = log_laplacian(state, bc, dom)
    u = state.u
    R = -lap / u
    root = np.sqrt(u[[0, -1]])
    area_rate = TWO_PI * float(np.dot(dom.weights, lap))
    k_lower, k_upper = boundary_curvatures(state, bc)
    gb = -area_rate + 2.0 * TWO_PI * (k_lower * root[0] + k_upper * root[1])
    return GeometricDiagnostics(
        R=R,
        R_min=float(R.min()),
        R_max=float(R.max()),
        A=float(TWO_PI * np.dot(dom.weights, u)),
        L=float(TWO_PI * root.sum()),
        r_boundary=float(np.dot(root, R[[0, -1]]) / root.sum()),
        gb_residual=float(gb),
        area_rate=area_rate,
    )


def interior_log_laplacian_range(state: SolutionState, dom: Interval1D) -> Tuple[float, float]:
    """Extremes of d_xx log u over interior nodes (the sign monitor)."""
    lap = interior_second_difference(state.w, dom.h)
    return float(lap.min()), float(lap.max())


def geodesic_half_length(state: SolutionState, dom: Interval1D) -> float:
    """Half the length of a meridian, 1/2 of the integral of sqrt(u) dx."""
    return float(0.5 * np.dot(dom.weights, np.sqrt(state.u)))


def area_length_check(state: SolutionState, bc, dom: Interval1D, alpha: float) -> AreaLengthReport:
    """Check A <= (2 L / alpha) sinh(alpha l) for a nonnegatively curved state.

    L is the total boundary length and l the geodesic half-length. Reports not-applicable when R < -h^2 somewhere or a boundary
    curvature exceeds alpha.
    """
    if alpha <= 0:
        raise PreconditionError(f'alpha must be positive, got {alpha}')
    R = curvature_field(state, bc, dom)
    if R.min() < -dom.h**2:
        reason = f'negative curvature {R.min():.3g}'
        logger.warning('Area-length check not applicable: %s', reason)
        return AreaLengthReport(False, reason=reason)
    k = boundary_curvatures(state, bc)
    if max(abs(k[0]), abs(k[1])) > alpha:
        reason = f'boundary curvature {max(abs(k[0]), abs(k[1])):.3g} exceeds alpha={alpha}'
        logger.warning('Area-length check not applicable: %s', reason)
        return AreaLengthReport(False, reason=reason)

    rhs = 2.0 * boundary_length(state, dom) / alpha * math.sinh(alpha * geodesic_half_length(state, dom))
    slack = rhs - area(state, dom)
    return AreaLengthReport(True, holds=slack >= 0, slack=float(slack))


def curvature_envelope(B: float, t):
    """Upper envelope B / (1 - B t) for R_max when R_max(0) <= B < 0."""
    if B >= 0:
        raise PreconditionError(f'envelope needs B < 0, got {B}')
    t = np.asarray(t, dtype=float)
    return B / (1.0 - B * t)


@dataclass
class MonotonicityReport:
    monotone: bool
    max_increase: float


def curvature_profile_monotone(state: SolutionState, bc, dom: Interval1D) -> MonotonicityReport:
    """Whether R decreases from the middle circle towards x = l."""
    R = curvature_field(state, bc, dom)
    half = R[dom.n // 2:]
    increase = float(np.max(np.diff(half), initial=0.0))
    return MonotonicityReport(increase <= 0.0, max(increase, 0.0))


def reconstruct_from_curvature(u0, times: Sequence[float], R_fields) -> np.ndarray:
    """Rebuild u(t) = u0 exp(-integral of R dt) from sampled curvature fields.

    Rows of the result follow `times`; time integration is trapezoidal.
    """
    times = np.asarray(times, dtype=float)
    R_fields = np.asarray(R_fields, dtype=float)
    if R_fields.shape[0] != times.shape[0]:
        raise PreconditionError('one curvature field per time is required')
    integral = cumulative_trapezoid(R_fields, times, axis=0, initial=0.0)
    return np.asarray(u0, dtype=float) * np.exp(-integral)


def area_law_residual(traj) -> Tuple[np.ndarray, np.ndarray]:
    """A(t) - A(0) + integral of (integral of R dA) dt.

    The time integral uses the right-endpoint rule, under which the
    conservative backward-Euler step satisfies the law to solver tolerance.
    """
    t, A = traj.series('area')
    _, rate = traj.series('area_rate')
    _, dt = traj.series('dt')
    predicted = A[0] + np.cumsum(dt * rate)
    return t, A - predicted


def length_law_residual(traj) -> Tuple[np.ndarray, np.ndarray]:
    """log(L(t)/L(0)) + 1/2 integral of r_boundary dt, trapezoid rule in time."""
    t, L = traj.series('length')
    _, r_b = traj.series('r_boundary')
    return t, np.log(L / L[0]) + 0.5 * cumulative_trapezoid(r_b, t, initial=0.0)
