"""Manufactured-solution convergence studies.

The exact field is u*(x, t) = 2 + sin(pi x / l) e^{-t}; the matching source
and the exact outward slopes of log u* turn it into a solution of the
discrete problem up to truncation error.
"""

from __future__ import annotations
from dataclasses import dataclass, field
import logging
import math
from typing import List, Sequence

import numpy as np

from ..core.models import Interval1D, SolutionState, SolverConfig
from ..core.stencils import LOG_LAPLACIAN, GhostStencil
from .line1d import run

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ManufacturedSolution:
    l: float = 1.0
    amplitude: float = 1.0
    offset: float = 2.0

    @property
    def k(self) -> float:
        return math.pi / self.l

    def u(self, x, t):
        return self.offset + self.amplitude * np.sin(self.k * x) * math.exp(-t)

    def u_t(self, x, t):
        return -self.amplitude * np.sin(self.k * x) * math.exp(-t)

    def log_u_x(self, x, t):
        return self.amplitude * self.k * np.cos(self.k * x) * math.exp(-t) / self.u(x, t)

    def log_u_xx(self, x, t):
        u = self.u(x, t)
        u_xx = -self.amplitude * self.k**2 * np.sin(self.k * x) * math.exp(-t)
        return u_xx / u - self.log_u_x(x, t) ** 2

    def source(self, x, t):
        """u*_t - d_xx log u*."""
        return self.u_t(x, t) - self.log_u_xx(x, t)

    def boundary(self) -> 'PrescribedSlope':
        return PrescribedSlope(self)

    def state(self, dom: Interval1D, t: float = 0.0) -> SolutionState:
        return SolutionState.from_u(t, self.u(dom.x, t))


@dataclass(frozen=True)
class PrescribedSlope:
    """Boundary that imposes the exact outward slope of log u*."""
    solution: ManufacturedSolution

    def log_slope(self, w_b, t: float = 0.0, side: int = 1):
        x = side * self.solution.l
        slope = side * float(self.solution.log_u_x(x, t))
        return slope, 0.0

    def to_dict(self) -> dict:
        return {'kind': 'manufactured', 'l': self.solution.l}


@dataclass
class OrderStudy:
    """Errors against a resolution parameter and the observed order."""
    parameter: str
    sizes: List[float]
    errors: List[float]
    orders: List[float] = field(default_factory=list)

    @property
    def observed(self) -> float:
        slope, _ = np.polyfit(np.log(self.sizes), np.log(self.errors), 1)
        return float(slope)

    def to_dict(self) -> dict:
        return {
            'parameter': self.parameter,
            'sizes': self.sizes,
            'errors': self.errors,
            'orders': self.orders,
            'observed': self.observed,
        }


def _pairwise_orders(sizes, errors) -> List[float]:
    return [
        math.log(errors[i] / errors[i + 1]) / math.log(sizes[i] / sizes[i + 1])
        for i in range(len(sizes) - 1)
    ]


def _fixed_step_config(dt: float) -> SolverConfig:
    return SolverConfig(dt_init=dt, dt_min=min(dt, 1e-12), dt_max=dt, step_rel_change=1.0,
                        newton_tol=1e-12)


def _solve(ms: ManufacturedSolution, dom: Interval1D, dt: float, t_final: float,
           stencil: GhostStencil) -> np.ndarray:
    traj = run(ms.state(dom), ms.boundary(), dom, _fixed_step_config(dt), t_final,
               src=ms.source, stencil=stencil, check=False)
    return traj.samples[-1].u


def spatial_order(nodes: Sequence[int] = (33, 65, 129), t_final: float = 0.1,
                  dt_factor: float = 0.5, stencil: GhostStencil = LOG_LAPLACIAN,
                  ms: ManufacturedSolution = ManufacturedSolution()) -> OrderStudy:
    """Max-norm error at t_final against the exact field, dt = dt_factor h^2."""
    sizes, errors = [], []
    for n in nodes:
        dom = Interval1D(ms.l, n)
        u = _solve(ms, dom, dt_factor * dom.h**2, t_final, stencil)
        sizes.append(dom.h)
        errors.append(float(np.max(np.abs(u - ms.u(dom.x, t_final)))))
        logger.debug('manufactured n=%d error=%.3e', n, errors[-1])
    return OrderStudy('h', sizes, errors, _pairwise_orders(sizes, errors))


def temporal_order(n: int = 65, dts: Sequence[float] = (0.02, 0.01, 0.005, 0.0025),
                   t_final: float = 0.2, stencil: GhostStencil = LOG_LAPLACIAN,
                   ms: ManufacturedSolution = ManufacturedSolution()) -> OrderStudy:
    """Successive differences of runs with halved steps on one grid."""
    dom = Interval1D(ms.l, n)
    solutions = [_solve(ms, dom, dt, t_final, stencil) for dt in dts]
    sizes = list(dts[:-1])
    errors = [float(np.max(np.abs(a - b))) for a, b in zip(solutions, solutions[1:])]
    return OrderStudy('dt', sizes, errors, _pairwise_orders(sizes, errors))
