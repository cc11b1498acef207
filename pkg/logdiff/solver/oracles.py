"""Closed-form solutions used as oracles."""

from __future__ import annotations
from dataclasses import dataclass
import math

import numpy as np

from ..core.models import Interval1D, RobinBoundary, SolutionState


@dataclass(frozen=True)
class SechSquaredOracle:
    """u(x, t) = (T - t) 2 c^2 sech^2(c x), exact for p = 1 and gamma = -c tanh(c l).

    The mass falls at the constant rate 4 gamma and vanishes at t = T.
    """
    c: float = 1.0
    T: float = 1.0
    l: float = 1.0

    @property
    def gamma(self) -> float:
        return -self.c * math.tanh(self.c * self.l)

    def boundary(self) -> RobinBoundary:
        return RobinBoundary(self.gamma, 1.0)

    def u(self, x, t: float = 0.0):
        return (self.T - t) * 2.0 * self.c**2 / np.cosh(self.c * np.asarray(x)) ** 2

    def state(self, dom: Interval1D, t: float = 0.0) -> SolutionState:
        return SolutionState.from_u(t, self.u(dom.x, t))

    def mass(self, t: float = 0.0) -> float:
        return (self.T - t) * 4.0 * self.c * math.tanh(self.c * self.l)

    @staticmethod
    def vanishing_time(mass: float, gamma: float) -> float:
        """Time at which a p = 1 run with this mass runs out."""
        return mass / (-4.0 * gamma)
