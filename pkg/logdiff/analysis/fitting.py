"""Asymptotic rate fits in transformed coordinates."""

from __future__ import annotations
from dataclasses import dataclass, field
from enum import Enum
import logging
import math
from typing import Optional, Tuple

import numpy as np

from ..errors import InsufficientPointsError, NonPositiveValuesError, PreconditionError

logger = logging.getLogger(__name__)

MIN_POINTS = 8


class RateModel(str, Enum):
    """Fit models and the coordinates they are linear in."""
    POWER = 'power'                        # log v against log t
    EXPONENTIAL = 'exponential'            # log v against t
    GAUSSIAN_LOG = 'gaussian_log'          # log v against t^2
    LINEAR_VANISHING = 'linear_vanishing'  # v against t


@dataclass
class RateFit:
    """A fitted model; `parameter` is alpha, lambda, D or C."""
    model: RateModel
    parameter: float
    fit_window: Tuple[float, float]
    rms_residual: float
    points: int
    parameters: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'model': self.model.value,
            'parameter': self.parameter,
            'parameters': self.parameters,
            'fit_window': list(self.fit_window),
            'rms_residual': self.rms_residual,
            'points': self.points,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'RateFit':
        return cls(
            model=RateModel(data['model']),
            parameter=data['parameter'],
            fit_window=tuple(data['fit_window']),
            rms_residual=data['rms_residual'],
            points=data['points'],
            parameters=data.get('parameters', {}),
        )


def default_window(t) -> Tuple[float, float]:
    """Last half of the series in log-time."""
    t = np.asarray(t, dtype=float)
    positive = t[t > 0]
    if positive.size == 0:
        raise InsufficientPointsError('series has no positive times')
    first, last = positive.min(), positive.max()
    return float(math.sqrt(first * last)), float(last)


def fit_rate(t, values, model, window: Optional[Tuple[float, float]] = None) -> RateFit:
    """Least-squares fit of one rate model on the points inside window."""
    model = RateModel(model)
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    if t.shape != values.shape:
        raise PreconditionError('times and values differ in length')
    t0, t1 = window if window is not None else default_window(t)
    mask = (t >= t0) & (t <= t1)
    t, values = t[mask], values[mask]
    if t.size < MIN_POINTS:
        raise InsufficientPointsError(
            f'{t.size} points in window ({t0:g}, {t1:g}); at least {MIN_POINTS} required'
        )
    if np.any(values <= 0):
        raise NonPositiveValuesError(f'non-positive values in window ({t0:g}, {t1:g})')

    if model is RateModel.POWER:
        if np.any(t <= 0):
            raise PreconditionError('power fits need positive times')
        X, Y = np.log(t), np.log(values)
    elif model is RateModel.EXPONENTIAL:
        X, Y = t, np.log(values)
    elif model is RateModel.GAUSSIAN_LOG:
        X, Y = t**2, np.log(values)
    else:
        X, Y = t, values

    slope, intercept = np.polyfit(X, Y, 1)
    rms = float(np.sqrt(np.mean((Y - (slope * X + intercept)) ** 2)))

    if model is RateModel.POWER:
        parameters = {'alpha': float(slope)}
    elif model is RateModel.EXPONENTIAL:
        parameters = {'lambda': float(slope)}
    elif model is RateModel.GAUSSIAN_LOG:
        parameters = {'D': float(-slope)}
    else:
        T = float(-intercept / slope) if slope != 0 else float('inf')
        parameters = {'C': float(-slope), 'T': T}
    parameter = next(iter(parameters.values()))
    logger.debug('%s fit on (%g, %g): %s', model.value, t0, t1, parameters)
    return RateFit(model, parameter, (float(t0), float(t1)), rms, int(t.size), parameters)


def fit_trajectory(traj, column: str, model, window=None) -> RateFit:
    """fit_rate on one diagnostic column of a trajectory."""
    t, values = traj.series(column)
    return fit_rate(t, values, model, window)
