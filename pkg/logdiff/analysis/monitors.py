"""Invariant monitors evaluated along a trajectory."""

from __future__ import annotations
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..errors import PreconditionError
from ..geometry.curvature import curvature_envelope


@dataclass
class SignReport:
    """Preservation of the sign of d_xx log u over interior nodes."""
    initial_sign: str
    worst: float
    preserved: bool

    def to_dict(self) -> dict:
        return {'initial_sign': self.initial_sign, 'worst': self.worst, 'preserved': self.preserved}


def sign_preservation(traj, slack: float = 0.0) -> SignReport:
    """Once strictly signed, the interior extremes of d_xx log u must keep the sign."""
    _, lap_min = traj.series('lap_min')
    _, lap_max = traj.series('lap_max')
    if lap_min[0] > 0:
        worst = float(lap_min.min())
        return SignReport('positive', worst, worst >= -slack)
    if lap_max[0] < 0:
        worst = float(lap_max.max())
        return SignReport('negative', worst, worst <= slack)
    return SignReport('mixed', float('nan'), True)


def flatness_ratio(traj) -> Tuple[np.ndarray, np.ndarray]:
    """u_max / u_min at every output time."""
    ratio = np.array([np.exp(s.w.max() - s.w.min()) for s in traj.samples])
    return traj.sample_times, ratio


def mass_law_residual(traj) -> Tuple[np.ndarray, np.ndarray]:
    """Per-step dm/dt difference quotient minus the boundary flux at the new time."""
    t, m = traj.series('mass')
    _, flux = traj.series('boundary_flux')
    _, dt = traj.series('dt')
    return t[1:], np.diff(m) / dt[1:] - flux[1:]


def mass_law_relative_residual(traj) -> Tuple[np.ndarray, np.ndarray]:
    """Per-step mass defect |dm - dt * flux| over the mass after the step."""
    t, residual = mass_law_residual(traj)
    _, m = traj.series('mass')
    _, dt = traj.series('dt')
    return t, np.abs(residual) * dt[1:] / m[1:]


def gauss_bonnet_relative_residual(traj) -> Tuple[np.ndarray, np.ndarray]:
    """|Gauss-Bonnet residual| over max(1, |int R dA| + |boundary curvature term|)."""
    t, gb = traj.series('gb_residual')
    _, rate = traj.series('area_rate')
    scale = np.abs(rate) + np.abs(gb + rate)
    return t, np.abs(gb) / np.maximum(scale, 1.0)


def growth_ceiling(traj, window: Optional[Tuple[float, float]] = None) -> float:
    """Largest log u_max / t over the window; finite means at most exponential growth."""
    t, u_max = traj.series('u_max')
    mask = _window_mask(t, window)
    return float(np.max(np.log(u_max[mask]) / t[mask]))


def decay_floor(traj, window: Optional[Tuple[float, float]] = None) -> float:
    """Smallest log u_min / t^2 over the window; finite means at most Gaussian decay."""
    t, u_min = traj.series('u_min')
    mask = _window_mask(t, window)
    return float(np.min(np.log(u_min[mask]) / t[mask] ** 2))


def _window_mask(t, window):
    lo, hi = window if window is not None else (0.0, float('inf'))
    mask = (t > 0) & (t >= lo) & (t <= hi)
    if not np.any(mask):
        raise PreconditionError(f'no diagnostic rows inside window {window}')
    return mask


def curvature_envelope_slack(traj, B: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """B/(1 - B t) - R_max(t), with B = R_max(0) unless given."""
    t, R_max = traj.series('R_max')
    B = R_max[0] if B is None else B
    return t, curvature_envelope(B, t) - R_max


def area_convexity_slack(traj) -> Tuple[np.ndarray, np.ndarray]:
    """A(t) - A(0) - A'(0) t; stays nonnegative when the area is convex in time."""
    t, A = traj.series('area')
    _, rate = traj.series('area_rate')
    return t, A - A[0] - rate[0] * (t - t[0])
