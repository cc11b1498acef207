"""Domain, boundary, state and solver configuration types."""

from __future__ import annotations
from dataclasses import dataclass, asdict, fields, replace
from typing import Tuple
import math

import numpy as np

from ..config import Config
from ..errors import PreconditionError


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Interval1D:
    """Uniform grid on [-l, l] with n nodes, both ends included."""
    l: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.l) and self.l > 0):
            raise PreconditionError(f'half-length must be positive, got {self.l}')
        if int(self.n) != self.n or self.n < 3:
            raise PreconditionError(f'need at least 3 nodes, got {self.n}')
        object.__setattr__(self, 'n', int(self.n))

    @property
    def h(self) -> float:
        return 2.0 * self.l / (self.n - 1)

    @property
    def x(self) -> np.ndarray:
        x = self.l * np.linspace(-1.0, 1.0, self.n)
        x[0], x[-1] = -self.l, self.l
        return x

    @property
    def weights(self) -> np.ndarray:
        """Trapezoid weights; also the control volumes of the discrete operator."""
        w = np.full(self.n, self.h)
        w[0] = w[-1] = 0.5 * self.h
        return w

    def refine(self) -> 'Interval1D':
        """Return the grid with every cell split in two (h halves exactly)."""
        return Interval1D(self.l, 2 * self.n - 1)

    def to_dict(self) -> dict:
        return {'l': self.l, 'n': self.n}

    @classmethod
    def from_dict(cls, data: dict) -> 'Interval1D':
        return cls(**data)


@dataclass(frozen=True)
class RobinBoundary:
    """Boundary law du/dn = 2 gamma u^p on both ends."""
    gamma: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and math.isfinite(self.p)):
            raise PreconditionError(
                f'boundary parameters must be finite, got gamma={self.gamma}, p={self.p}'
            )

    def log_slope(self, w_b, t: float = 0.0, side: int = 1) -> Tuple[np.ndarray, np.ndarray]:
        """Outward slope of w = log u at a boundary value w_b and its w_b-derivative."""
        g = 2.0 * self.gamma * np.exp((self.p - 1.0) * np.asarray(w_b, dtype=float))
        return g, (self.p - 1.0) * g

    def geodesic_curvature(self, u_b):
        """Boundary geodesic curvature gamma u^(p - 3/2) of the metric u (dx^2 + dtheta^2)."""
        return self.gamma * np.power(u_b, self.p - 1.5)

    def to_dict(self) -> dict:
        return {'kind': 'robin', 'gamma': self.gamma, 'p': self.p}

    @classmethod
    def from_dict(cls, data: dict) -> 'RobinBoundary':
        data = {k: v for k, v in data.items() if k != 'kind'}
        return cls(**data)


@dataclass(frozen=True, eq=False)
class SolutionState:
    """Node values of w = log u at time t."""
    t: float
    w: np.ndarray

    def __post_init__(self):
        w = _frozen_array(self.w)
        if not np.all(np.isfinite(w)):
            raise PreconditionError('state holds non-finite log values')
        object.__setattr__(self, 'w', w)
        object.__setattr__(self, 't', float(self.t))

    @classmethod
    def from_u(cls, t: float, u) -> 'SolutionState':
        u = np.asarray(u, dtype=float)
        if not np.all(u > 0):
            raise PreconditionError('conformal factor must be strictly positive')
        return cls(t, np.log(u))

    @property
    def u(self) -> np.ndarray:
        return np.exp(self.w)

    @property
    def shape(self) -> tuple:
        return self.w.shape

    def at(self, t: float) -> 'SolutionState':
        return SolutionState(t, self.w)

    def to_dict(self) -> dict:
        return {'t': self.t, 'w': self.w.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> 'SolutionState':
        return cls(data['t'], np.asarray(data['w'], dtype=float))


_DEFAULTS = Config.SOLVER_DEFAULTS


@dataclass(frozen=True)
class SolverConfig:
    """Time-step bounds, Newton tolerances and event thresholds."""
    dt_init: float = _DEFAULTS['dt_init']
    dt_min: float = _DEFAULTS['dt_min']
    dt_max: float = _DEFAULTS['dt_max']
    newton_tol: float = _DEFAULTS['newton_tol']
    newton_max_iter: int = _DEFAULTS['newton_max_iter']
    step_rel_change: float = _DEFAULTS['step_rel_change']
    blow_up_threshold: float = _DEFAULTS['blow_up_threshold']
    blow_down_threshold: float = _DEFAULTS['blow_down_threshold']
    dt_growth: float = 1.2
    easy_newton_iters: int = 4

    def __post_init__(self):
        if not (0 < self.dt_min <= self.dt_init <= self.dt_max):
            raise PreconditionError(
                f'need 0 < dt_min <= dt_init <= dt_max, got '
                f'{self.dt_min}, {self.dt_init}, {self.dt_max}'
            )
        if self.newton_tol <= 0 or self.newton_max_iter < 1:
            raise PreconditionError('Newton tolerance and iteration cap must be positive')
        if self.step_rel_change <= 0:
            raise PreconditionError('step_rel_change must be positive')
        if not (0 < self.blow_down_threshold < 1 < self.blow_up_threshold):
            raise PreconditionError('need 0 < blow_down_threshold < 1 < blow_up_threshold')
        if self.dt_growth <= 1:
            raise PreconditionError('dt_growth must exceed 1')

    def with_overrides(self, **overrides) -> 'SolverConfig':
        return replace(self, **overrides)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'SolverConfig':
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise PreconditionError(f'unknown solver settings: {sorted(unknown)}')
        return cls(**data)
