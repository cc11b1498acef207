"""Radially symmetric solutions on the disc of radius a.

The operator is written in finite-volume form on the control volumes
[r_i - h/2, r_i + h/2] (clipped at 0 and a), which reduces to the central
polar stencil at interior nodes and to 4 (w_1 - w_0) / h^2 at the origin.
"""

from __future__ import annotations
from dataclasses import dataclass
import logging
import math
from typing import Iterable, Optional, Union

import numpy as np
from scipy.linalg import solve_banded

from ..core.compatibility import check_collar
from ..core.models import RobinBoundary, SolutionState, SolverConfig
from ..core.stencils import blend_to_slopes, outward_slopes
from ..errors import PreconditionError
from ..solver.models import DiagnosticRow, Trajectory
from ..solver.stepping import integrate

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
COMPATIBILITY_TOLERANCE = 1e-6


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial nodes 0 = r_0 < ... < r_{n-1} = a."""
    a: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise PreconditionError(f'radius must be positive, got {self.a}')
        if int(self.n) != self.n or self.n < 3:
            raise PreconditionError(f'need at least 3 nodes, got {self.n}')
        object.__setattr__(self, 'n', int(self.n))

    @property
    def h(self) -> float:
        return self.a / (self.n - 1)

    @property
    def r(self) -> np.ndarray:
        r = self.a * np.linspace(0.0, 1.0, self.n)
        r[-1] = self.a
        return r

    @property
    def faces(self) -> np.ndarray:
        """Radii r_{i+1/2} of the interior cell faces."""
        return self.r[:-1] + 0.5 * self.h

    @property
    def volumes(self) -> np.ndarray:
        """Control volumes divided by 2 pi."""
        h = self.h
        v = self.r * h
        v[0] = h**2 / 8.0
        v[-1] = (self.a - 0.25 * h) * h / 2.0
        return v

    def refine(self) -> 'RadialGrid':
        return RadialGrid(self.a, 2 * self.n - 1)

    def to_dict(self) -> dict:
        return {'a': self.a, 'n': self.n}

    @classmethod
    def from_dict(cls, data: dict) -> 'RadialGrid':
        return cls(**data)


@dataclass(frozen=True)
class CurvatureBoundary:
    """Boundary circle of constant geodesic curvature beta.

    In log variables d_r log u(a) = 2 beta sqrt(u) - 2/a.
    """
    beta: float
    a: float

    def __post_init__(self):
        if not (math.isfinite(self.beta) and math.isfinite(self.a) and self.a > 0):
            raise PreconditionError(f'invalid curvature boundary beta={self.beta}, a={self.a}')

    def log_slope(self, w_b, t: float = 0.0, side: int = 1):
        root = np.exp(0.5 * np.asarray(w_b, dtype=float))
        return 2.0 * self.beta * root - 2.0 / self.a, self.beta * root

    def to_dict(self) -> dict:
        return {'kind': 'curvature', 'beta': self.beta, 'a': self.a}


DiscBoundary = Union[RobinBoundary, CurvatureBoundary]


def _check_state(state: SolutionState, grid: RadialGrid):
    if state.w.shape != (grid.n,):
        raise PreconditionError(f'state has shape {state.w.shape}, grid has {grid.n} nodes')


def _radial_operator(w: np.ndarray, g: float, grid: RadialGrid) -> np.ndarray:
    h = grid.h
    flux = grid.faces * np.diff(w) / h
    net = np.empty_like(w)
    net[0] = flux[0]
    net[1:-1] = flux[1:] - flux[:-1]
    net[-1] = grid.a * g - flux[-1]
    return net / grid.volumes


def apply_radial_log_diffusion(state: SolutionState, bcd: DiscBoundary,
                               grid: RadialGrid) -> np.ndarray:
    """du/dt = (1/r) d_r (r d_r log u) with symmetry at 0 and the boundary law at a."""
    _check_state(state, grid)
    g, _ = bcd.log_slope(state.w[-1], state.t, 1)
    return _radial_operator(state.w, g, grid)


def hemisphere_oracle(r, t, T):
    """Shrinking hemisphere 8 (T - t) / (1 + r^2)^2, exact for a = 1 and beta = 0."""
    r = np.asarray(r, dtype=float)
    return 8.0 * (T - t) / (1.0 + r**2) ** 2


def radial_compatibility_residual(state: SolutionState, bcd: DiscBoundary,
                                  grid: RadialGrid) -> float:
    """Outward one-sided slope of log u at r = a minus the boundary law."""
    _check_state(state, grid)
    _, slope = outward_slopes(state.w, grid.h)
    g, _ = bcd.log_slope(state.w[-1], state.t, 1)
    return float(slope - g)


def make_compatible_radial(profile, bcd: DiscBoundary, grid: RadialGrid,
                           blend_width: float, t: float = 0.0) -> SolutionState:
    """Collar correction at r = a; the origin needs none."""
    profile = np.asarray(profile, dtype=float)
    if profile.shape != (grid.n,) or not np.all(profile > 0):
        raise PreconditionError('profile must be strictly positive on every radial node')
    check_collar(blend_width, grid.a, grid.h)
    state = SolutionState.from_u(t, profile)
    if abs(radial_compatibility_residual(state, bcd, grid)) < 1e-12:
        return state
    g, _ = bcd.log_slope(state.w[-1], t, 1)
    return SolutionState(t, blend_to_slopes(state.w, grid.h, blend_width, upper=g))


class RadialProblem:
    """Backward-Euler equations on the disc."""

    def __init__(self, grid: RadialGrid, bcd: DiscBoundary):
        self.grid = grid
        self.bcd = bcd
        h, faces, vol = grid.h, grid.faces, grid.volumes
        ab = np.zeros((3, grid.n))
        ab[0, 1:] = faces / (h * vol[:-1])
        ab[2, :-1] = faces / (h * vol[1:])
        ab[1, :-1] -= faces / (h * vol[:-1])
        ab[1, 1:] -= faces / (h * vol[1:])
        self._bands = ab

    def residual(self, w, w_old, t, dt):
        g, _ = self.bcd.log_slope(w[-1], t, 1)
        return (np.exp(w) - np.exp(w_old)) / dt - _radial_operator(w, g, self.grid)

    def solve_jacobian(self, w, t, dt, rhs):
        _, dg = self.bcd.log_slope(w[-1], t, 1)
        ab = -self._bands
        ab[1] += np.exp(w) / dt
        ab[1, -1] -= self.grid.a * dg / self.grid.volumes[-1]
        return solve_banded((1, 1), ab, rhs, check_finite=False)

    def diagnose(self, state: SolutionState, dt: float, newton_iters: int) -> DiagnosticRow:
        grid = self.grid
        w, u = state.w, state.u
        g, _ = self.bcd.log_slope(w[-1], state.t, 1)
        lap = _radial_operator(w, g, grid)
        R = -lap / u
        area_rate = TWO_PI * float(np.dot(grid.volumes, lap))
        root_b = math.sqrt(u[-1])
        k = (1.0 / grid.a + 0.5 * float(g)) / root_b
        length = TWO_PI * grid.a * root_b
        mass = TWO_PI * float(np.dot(grid.volumes, u))
        return DiagnosticRow(
            t=state.t,
            dt=dt,
            newton_iters=newton_iters,
            u_min=float(u.min()),
            u_max=float(u.max()),
            mass=mass,
            R_min=float(R.min()),
            R_max=float(R.max()),
            area=mass,
            length=length,
            gb_residual=-area_rate + 2.0 * k * length - 2.0 * TWO_PI,
            lap_min=float(lap[:-1].min()),
            lap_max=float(lap[:-1].max()),
            boundary_flux=TWO_PI * grid.a * float(g),
            area_rate=area_rate,
            r_boundary=float(R[-1]),
            extra={'u_boundary': float(u[-1])},
        )


def run_disc(u0: SolutionState, bcd: DiscBoundary, grid: RadialGrid, cfg: SolverConfig,
             t_final: float, output_times: Optional[Iterable[float]] = None) -> Trajectory:
    """Integrate the radial problem; contract as the interval solver's run."""
    residual = radial_compatibility_residual(u0, bcd, grid)
    if abs(residual) >= COMPATIBILITY_TOLERANCE:
        raise PreconditionError(f'initial data is not compatible at r = a: residual {residual}')
    problem = RadialProblem(grid, bcd)
    return integrate(
        problem, u0, cfg, t_final, output_times, problem.diagnose,
        solver='disc',
        domain=grid.to_dict(),
        boundary=bcd.to_dict(),
        exponent=getattr(bcd, 'p', None),
    )
