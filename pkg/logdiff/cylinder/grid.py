"""Grid and boundary curvature data on [-l, l] x S^1."""

from __future__ import annotations
from dataclasses import dataclass, field
import math
from typing import Callable

import numpy as np

from ..core.models import Interval1D
from ..errors import PreconditionError

PhiFunction = Callable[[int, np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class CylinderGrid:
    """nx axial nodes on [-l, l] times ntheta periodic angular nodes."""
    l: float
    nx: int
    ntheta: int

    def __post_init__(self):
        if not (math.isfinite(self.l) and self.l > 0):
            raise PreconditionError(f'half-length must be positive, got {self.l}')
        if self.nx < 3 or self.ntheta < 4:
            raise PreconditionError(
                f'need nx >= 3 and ntheta >= 4, got {self.nx} x {self.ntheta}'
            )

    @property
    def axis(self) -> Interval1D:
        return Interval1D(self.l, self.nx)

    @property
    def hx(self) -> float:
        return self.axis.h

    @property
    def htheta(self) -> float:
        return 2.0 * math.pi / self.ntheta

    @property
    def x(self) -> np.ndarray:
        return self.axis.x

    @property
    def theta(self) -> np.ndarray:
        return self.htheta * np.arange(self.ntheta)

    @property
    def shape(self) -> tuple:
        return (self.nx, self.ntheta)

    @property
    def cell_weights(self) -> np.ndarray:
        """Quadrature weights of dx dtheta, shape (nx, ntheta)."""
        return np.outer(self.axis.weights, np.full(self.ntheta, self.htheta))

    def refine(self) -> 'CylinderGrid':
        return CylinderGrid(self.l, 2 * self.nx - 1, 2 * self.ntheta)

    def to_dict(self) -> dict:
        return {'l': self.l, 'nx': self.nx, 'ntheta': self.ntheta}


@dataclass(frozen=True)
class BoundaryCurvature:
    """Prescribed geodesic curvature phi(side, theta, t) of the two boundary circles.

    side is -1 for x = -l and +1 for x = +l.
    """
    func: PhiFunction
    name: str = 'custom'
    params: dict = field(default_factory=dict)

    def __call__(self, side: int, theta, t: float) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return np.broadcast_to(np.asarray(self.func(side, theta, t), dtype=float), theta.shape)

    @classmethod
    def constant(cls, gamma: float) -> 'BoundaryCurvature':
        return cls(lambda side, theta, t: np.full_like(theta, gamma), 'constant', {'gamma': gamma})

    @classmethod
    def modulated(cls, mean: float, amplitude: float) -> 'BoundaryCurvature':
        """mean + amplitude sin(theta) cos(t) on both circles."""
        return cls(
            lambda side, theta, t: mean + amplitude * np.sin(theta) * math.cos(t),
            'modulated',
            {'mean': mean, 'amplitude': amplitude},
        )

    def rotated(self, shift: float) -> 'BoundaryCurvature':
        """phi evaluated at theta - shift."""
        return BoundaryCurvature(
            lambda side, theta, t: self.func(side, theta - shift, t),
            self.name,
            dict(self.params, shift=shift),
        )

    def extremes(self, theta: np.ndarray, t_final: float, samples: int = 201):
        """Min and max of phi over both circles, the given angles and [0, t_final]."""
        values = [
            self(side, theta, t)
            for t in np.linspace(0.0, t_final, samples)
            for side in (-1, 1)
        ]
        stacked = np.concatenate(values)
        return float(stacked.min()), float(stacked.max())

    def to_dict(self) -> dict:
        return {'kind': 'curvature_field', 'name': self.name, **self.params}
