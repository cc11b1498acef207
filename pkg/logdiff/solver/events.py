"""Singular-time estimation from the tail of a trajectory."""

from __future__ import annotations
import logging
import math
from typing import Optional

import numpy as np

from ..errors import PreconditionError
from .models import SingularEvent, Termination, Trajectory

logger = logging.getLogger(__name__)

MIN_ROWS = 10
TAIL_FRACTION = 0.2


def _tail(traj: Trajectory, name: str):
    t, v = traj.series(name)
    count = max(3, math.ceil(TAIL_FRACTION * len(traj.rows)))
    return t[-count:], v[-count:]


def detect_singularity(traj: Trajectory) -> SingularEvent:
    """Classify the run's end and extrapolate the singular time.

    Blow-down fits u_min linearly in t; blow-up fits u_max^(2-p) for p > 2
    and 1/u_max otherwise. The root of the fitted line is T_est.
    """
    if not traj.termination.singular:
        return SingularEvent('none')
    if len(traj.rows) < MIN_ROWS:
        raise PreconditionError(
            f'need at least {MIN_ROWS} diagnostic rows, trajectory has {len(traj.rows)}'
        )

    kind = traj.termination.value
    if kind == 'blow_down':
        t, v = _tail(traj, 'u_min')
    else:
        t, u_max = _tail(traj, 'u_max')
        p = traj.exponent
        v = u_max ** (2.0 - p) if p is not None and p > 2 else 1.0 / u_max

    slope, intercept = np.polyfit(t - t[-1], v, 1)
    if slope >= 0:
        logger.warning('Tail of %s run is not vanishing; using the final time', kind)
        return SingularEvent(kind, float(t[-1]))
    return SingularEvent(kind, float(t[-1] - intercept / slope))


def collapse_at_underflow(traj: Trajectory, blow_down_threshold: float,
                          blow_up_threshold: float) -> Optional[Termination]:
    """Singular kind of a run whose step size underflowed, or None.

    A collapse needs a monotone extreme over the tail rows that has passed
    the geometric midpoint between its initial value and the threshold.
    """
    if len(traj.rows) < MIN_ROWS:
        return None
    _, u_min = _tail(traj, 'u_min')
    if (np.all(np.diff(u_min) <= 0) and u_min[-1] < u_min[0]
            and u_min[-1] <= math.sqrt(traj.initial.u_min * blow_down_threshold)):
        return Termination.BLOW_DOWN
    _, u_max = _tail(traj, 'u_max')
    if (np.all(np.diff(u_max) >= 0) and u_max[-1] > u_max[0]
            and u_max[-1] >= math.sqrt(traj.initial.u_max * blow_up_threshold)):
        return Termination.BLOW_UP
    return None
