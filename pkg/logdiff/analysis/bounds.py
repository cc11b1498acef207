"""Finite-time mass bounds for the blow-down and blow-up regimes."""

from __future__ import annotations
from dataclasses import dataclass
import logging
from typing import Optional

import numpy as np

from ..core.models import Interval1D, RobinBoundary

logger = logging.getLogger(__name__)

DEADLINE_SLACK = 0.05


@dataclass
class BoundCheck:
    """Slack of a mass bound per diagnostic time, plus its singular-time deadline."""
    applicable: bool
    reason: str = ''
    times: Optional[np.ndarray] = None
    slack: Optional[np.ndarray] = None
    deadline: Optional[float] = None
    t_est: Optional[float] = None
    sign_condition: Optional[bool] = None

    @property
    def worst_slack(self) -> Optional[float]:
        if not self.applicable or self.slack is None or self.slack.size == 0:
            return None
        return float(np.min(self.slack))

    @property
    def within_deadline(self) -> Optional[bool]:
        if self.t_est is None or self.deadline is None:
            return None
        return bool(self.t_est <= (1.0 + DEADLINE_SLACK) * self.deadline)

    def to_dict(self) -> dict:
        return {
            'applicable': self.applicable,
            'reason': self.reason,
            'worst_slack': self.worst_slack,
            'deadline': self.deadline,
            't_est': self.t_est,
            'within_deadline': self.within_deadline,
            'sign_condition': self.sign_condition,
        }


def _not_applicable(reason: str) -> BoundCheck:
    logger.warning('Mass bound not applicable: %s', reason)
    return BoundCheck(False, reason)


def blowdown_constants(bc: RobinBoundary, l: float):
    """(epsilon, alpha) of m^(1+eps)(t) <= m^(1+eps)(0) + alpha t, eps = 1 - p."""
    eps = 1.0 - bc.p
    alpha = 2.0 * bc.gamma * (1.0 + eps) * (2.0 * l) ** eps
    return eps, alpha


def blowup_constant(bc: RobinBoundary, l: float) -> float:
    """beta of m^(p-2)(t) >= 1 / (m^(2-p)(0) + beta t)."""
    return 2.0 * (2.0 - bc.p) * bc.gamma / (2.0 * l) ** (bc.p - 1.0)


def mass_bound_blowdown_slack(t, m, bc: RobinBoundary, l: float):
    """Slack m^(1+eps)(0) + alpha t - m^(1+eps)(t) and the deadline -m^(1+eps)(0)/alpha."""
    t, m = np.asarray(t, dtype=float), np.asarray(m, dtype=float)
    eps, alpha = blowdown_constants(bc, l)
    start = m[0] ** (1.0 + eps)
    slack = start + alpha * (t - t[0]) - m ** (1.0 + eps)
    return slack, -start / alpha


def mass_bound_blowup_slack(t, m, bc: RobinBoundary, l: float):
    """Slack m^(p-2)(t) - 1/(m^(2-p)(0) + beta t) and the deadline m^(2-p)(0)/(-beta).

    Only times before the deadline carry a finite bound.
    """
    t, m = np.asarray(t, dtype=float), np.asarray(m, dtype=float)
    beta = blowup_constant(bc, l)
    start = m[0] ** (2.0 - bc.p)
    denominator = start + beta * (t - t[0])
    live = denominator > 0
    slack = m[live] ** (bc.p - 2.0) - 1.0 / denominator[live]
    return t[live], slack, start / -beta


def _sign_condition(traj, positive: bool) -> bool:
    _, lap = traj.series('lap_min' if positive else 'lap_max')
    return bool(np.all(lap > 0)) if positive else bool(np.all(lap < 0))


def check_mass_bound_blowdown(traj, bc: RobinBoundary, dom: Interval1D) -> BoundCheck:
    """Blow-down mass bound for p < 1, gamma < 0.

    The concavity of log u is reported alongside but does not gate the check.
    """
    if not (bc.p < 1 and bc.gamma < 0):
        return _not_applicable(f'needs p < 1 and gamma < 0 (p={bc.p}, gamma={bc.gamma})')
    t, m = traj.series('mass')
    slack, deadline = mass_bound_blowdown_slack(t, m, bc, dom.l)
    return BoundCheck(True, times=t, slack=slack, deadline=float(deadline), t_est=traj.t_est,
                      sign_condition=_sign_condition(traj, positive=False))


def check_mass_bound_blowup(traj, bc: RobinBoundary, dom: Interval1D) -> BoundCheck:
    """Blow-up mass bound for p > 2, gamma > 0."""
    if not (bc.p > 2 and bc.gamma > 0):
        return _not_applicable(f'needs p > 2 and gamma > 0 (p={bc.p}, gamma={bc.gamma})')
    t, m = traj.series('mass')
    times, slack, deadline = mass_bound_blowup_slack(t, m, bc, dom.l)
    return BoundCheck(True, times=times, slack=slack, deadline=float(deadline), t_est=traj.t_est,
                      sign_condition=_sign_condition(traj, positive=True))
