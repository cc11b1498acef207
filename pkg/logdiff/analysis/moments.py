"""Moment functionals r_n = int u^n dx and q_n = int u^-n dx."""

from __future__ import annotations
from dataclasses import dataclass
import logging
from typing import Optional

import numpy as np

from ..core.models import Interval1D, RobinBoundary
from ..errors import PreconditionError

logger = logging.getLogger(__name__)


@dataclass
class MomentSeries:
    """A moment at every output time.

    step_times, step_dt and step_boundary carry u(-l), u(l) after every
    accepted step when the run recorded them.
    """
    n: float
    kind: str
    times: np.ndarray
    values: np.ndarray
    boundary_values: np.ndarray
    step_times: Optional[np.ndarray] = None
    step_dt: Optional[np.ndarray] = None
    step_boundary: Optional[np.ndarray] = None

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'kind': self.kind,
            'times': self.times.tolist(),
            'values': self.values.tolist(),
        }


@dataclass
class MomentSlack:
    """Slack of a moment differential inequality; negative means violated."""
    applicable: bool
    times: np.ndarray = None
    slack: np.ndarray = None
    reason: str = ''

    @property
    def worst(self) -> float:
        return float(self.slack.min()) if self.applicable and self.slack.size else float('nan')


def _interval(traj) -> Interval1D:
    if traj.solver != 'line1d':
        raise PreconditionError(f'moment series are defined for interval runs, not {traj.solver}')
    return Interval1D.from_dict(traj.domain)


def moment_series(traj, n: float, kind: str = 'r') -> MomentSeries:
    """Trapezoid quadrature of u^n (kind 'r') or u^-n (kind 'q') at every output time."""
    if n < 1:
        raise PreconditionError(f'moment order must be at least 1, got {n}')
    if kind not in ('r', 'q'):
        raise PreconditionError(f"moment kind must be 'r' or 'q', got {kind!r}")
    dom = _interval(traj)
    exponent = n if kind == 'r' else -n
    times = traj.sample_times
    values = np.array([np.dot(dom.weights, np.exp(exponent * s.w)) for s in traj.samples])
    boundary = np.array([np.exp(s.w[[0, -1]]) for s in traj.samples])
    series = MomentSeries(n, kind, times, values, boundary)
    if traj.rows and 'u_lower' in traj.rows[0].extra:
        series.step_times = np.array([r.t for r in traj.rows])
        series.step_dt = np.array([r.dt for r in traj.rows])
        series.step_boundary = np.array([[r.extra['u_lower'], r.extra['u_upper']] for r in traj.rows])
    return series


def _interval_means(series: MomentSeries, step_values: np.ndarray) -> np.ndarray:
    """Mean of a per-step quantity over each output interval, right-endpoint weighted by dt."""
    weighted = series.step_dt * step_values
    edges = series.times
    return np.array([
        np.sum(weighted[(series.step_times > a) & (series.step_times <= b)]) / (b - a)
        for a, b in zip(edges[:-1], edges[1:])
    ])


def moment_inequality_slack(series: MomentSeries, bc: RobinBoundary,
                            dom: Interval1D) -> MomentSlack:
    """Check the moment inequalities integrated over each output interval.

    r: r_n' <= 2 gamma n [u^(n+p-2)(l) + u^(n+p-2)(-l)].
    q (p > 2, gamma < 0): q_n' >= (-2 n gamma / (2l)^((n+2-p)/n)) q_n^(1-(p-2)/n).
    The r bound is summed over the accepted steps with the backward-Euler
    weights when they were recorded; otherwise both sides use the trapezoid
    rule between output times.
    """
    n, p, gamma = series.n, bc.p, bc.gamma
    if series.times.size < 2:
        return MomentSlack(False, reason='need at least two output times')
    dt = np.diff(series.times)
    rate = np.diff(series.values) / dt
    if series.kind == 'r':
        coefficient = 2.0 * gamma * n
        if series.step_boundary is not None:
            step_bound = coefficient * np.sum(series.step_boundary ** (n + p - 2.0), axis=1)
            bound = _interval_means(series, step_bound)
        else:
            values = coefficient * np.sum(series.boundary_values ** (n + p - 2.0), axis=1)
            bound = 0.5 * (values[:-1] + values[1:])
        return MomentSlack(True, series.times[1:], bound - rate)

    if not (p > 2 and gamma < 0):
        reason = f'q-moment inequality needs p > 2 and gamma < 0 (p={p}, gamma={gamma})'
        logger.warning('Moment check not applicable: %s', reason)
        return MomentSlack(False, reason=reason)
    coefficient = -2.0 * n * gamma / (2.0 * dom.l) ** ((n + 2.0 - p) / n)
    values = coefficient * series.values ** (1.0 - (p - 2.0) / n)
    bound = 0.5 * (values[:-1] + values[1:])
    return MomentSlack(True, series.times[1:], rate - bound)
