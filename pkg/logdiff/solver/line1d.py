"""Method-of-lines solver on [-l, l] in the log variable w = log u."""

from __future__ import annotations
import logging
from typing import Iterable, Optional

import numpy as np
from scipy.linalg import solve_banded

from ..core.compatibility import compatibility_residual
from ..core.models import Interval1D, RobinBoundary, SolutionState, SolverConfig
from ..core.stencils import LOG_LAPLACIAN, GhostStencil
from ..errors import PreconditionError
from ..geometry.curvature import (
    geometric_diagnostics,
    interior_log_laplacian_range,
    log_laplacian,
)
from .events import detect_singularity
from .models import DiagnosticRow, SourceTerm, StepOutcome, Trajectory
from .stepping import integrate, take_step

logger = logging.getLogger(__name__)

#: Largest compatibility residual accepted at the start of a run.
COMPATIBILITY_TOLERANCE = 1e-6


def apply_log_diffusion(state: SolutionState, bc: RobinBoundary, dom: Interval1D,
                        stencil: GhostStencil = LOG_LAPLACIAN) -> np.ndarray:
    """du/dt = d_xx log u on every node, with ghost nodes set by the boundary law."""
    if state.w.shape != (dom.n,):
        raise PreconditionError(f'state has shape {state.w.shape}, grid has {dom.n} nodes')
    return log_laplacian(state, bc, dom, stencil)


class Line1DProblem:
    """Backward-Euler equations for one interval run."""

    def __init__(self, dom: Interval1D, bc, source: Optional[SourceTerm] = None,
                 stencil: GhostStencil = LOG_LAPLACIAN):
        self.dom = dom
        self.bc = bc
        self.source = source
        self.stencil = stencil
        self._x = dom.x

    def operator(self, w: np.ndarray, t: float) -> np.ndarray:
        g_lower, _ = self.bc.log_slope(w[0], t, -1)
        g_upper, _ = self.bc.log_slope(w[-1], t, 1)
        return self.stencil.apply(w, self.dom.h, g_lower, g_upper)

    def residual(self, w, w_old, t, dt):
        F = (np.exp(w) - np.exp(w_old)) / dt - self.operator(w, t)
        if self.source is not None:
            F = F - self.source(self._x, t)
        return F

    def solve_jacobian(self, w, t, dt, rhs):
        _, dg_lower = self.bc.log_slope(w[0], t, -1)
        _, dg_upper = self.bc.log_slope(w[-1], t, 1)
        ab = -self.stencil.bands(self.dom.n, self.dom.h, dg_lower, dg_upper)
        ab[1] += np.exp(w) / dt
        return solve_banded((1, 1), ab, rhs, check_finite=False)

    def diagnose(self, state: SolutionState, dt: float, newton_iters: int) -> DiagnosticRow:
        geo = geometric_diagnostics(state, self.bc, self.dom)
        lap_min, lap_max = interior_log_laplacian_range(state, self.dom)
        u = state.u
        return DiagnosticRow(
            t=state.t,
            dt=dt,
            newton_iters=newton_iters,
            u_min=float(u.min()),
            u_max=float(u.max()),
            mass=float(np.dot(self.dom.weights, u)),
            R_min=geo.R_min,
            R_max=geo.R_max,
            area=geo.A,
            length=geo.L,
            gb_residual=geo.gb_residual,
            lap_min=lap_min,
            lap_max=lap_max,
            boundary_flux=geo.area_rate / (2.0 * np.pi),
            area_rate=geo.area_rate,
            r_boundary=geo.r_boundary,
            extra={'u_lower': float(u[0]), 'u_upper': float(u[-1])},
        )


def step_implicit(state: SolutionState, bc: RobinBoundary, dom: Interval1D,
                  cfg: SolverConfig, dt: float, src: Optional[SourceTerm] = None,
                  stencil: GhostStencil = LOG_LAPLACIAN) -> StepOutcome:
    """One backward-Euler step; the caller halves dt on rejection."""
    return take_step(Line1DProblem(dom, bc, src, stencil), state, cfg, dt)


def check_compatible(state: SolutionState, bc, dom: Interval1D,
                     tolerance: float = COMPATIBILITY_TOLERANCE):
    residual = compatibility_residual(state, bc, dom)
    if max(abs(r) for r in residual) >= tolerance:
        raise PreconditionError(
            f'initial data is not compatible with the boundary law: residuals {residual}'
        )


def run(u0: SolutionState, bc: RobinBoundary, dom: Interval1D, cfg: SolverConfig,
        t_final: float, output_times: Optional[Iterable[float]] = None,
        src: Optional[SourceTerm] = None, stencil: GhostStencil = LOG_LAPLACIAN,
        check: bool = True) -> Trajectory:
    """Integrate the interval problem from u0 to t_final.

    The start state must satisfy the boundary law to COMPATIBILITY_TOLERANCE.
    """
    if check:
        check_compatible(u0, bc, dom)
    problem = Line1DProblem(dom, bc, src, stencil)
    return integrate(
        problem, u0, cfg, t_final, output_times, problem.diagnose,
        solver='line1d',
        domain=dom.to_dict(),
        boundary=bc.to_dict(),
        exponent=getattr(bc, 'p', None),
    )


__all__ = [
    'Line1DProblem',
    'apply_log_diffusion',
    'check_compatible',
    'detect_singularity',
    'run',
    'step_implicit',
]
