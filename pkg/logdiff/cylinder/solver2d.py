"""Two-variable solver on the cylinder [-l, l] x S^1.

State arrays have shape (nx, ntheta). The boundary law is
du/dN = 2 phi u^(3/2), i.e. an outward log slope g = 2 phi sqrt(u).
"""

from __future__ import annotations
import logging
import math
from typing import Iterable, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from ..core.compatibility import check_collar
from ..core.models import SolutionState, SolverConfig
from ..core.stencils import LOG_LAPLACIAN, blend_to_slopes, outward_slopes
from ..errors import PreconditionError
from ..solver.models import DiagnosticRow, Trajectory
from ..solver.stepping import integrate
from .grid import BoundaryCurvature, CylinderGrid
from .linear import line_preconditioner, solve_preconditioned

logger = logging.getLogger(__name__)

COMPATIBILITY_TOLERANCE = 1e-6
GMRES_RTOL = 1e-10


def _check_state(state: SolutionState, grid: CylinderGrid):
    if state.w.shape != grid.shape:
        raise PreconditionError(f'state has shape {state.w.shape}, grid is {grid.shape}')


def boundary_slopes(w: np.ndarray, phi: BoundaryCurvature, grid: CylinderGrid,
                    t: float) -> Tuple[np.ndarray, np.ndarray]:
    """Outward log slopes 2 phi sqrt(u) on the lower and upper circles."""
    theta = grid.theta
    return (2.0 * phi(-1, theta, t) * np.exp(0.5 * w[0]),
            2.0 * phi(1, theta, t) * np.exp(0.5 * w[-1]))


def _theta_second_difference(w: np.ndarray, htheta: float) -> np.ndarray:
    return (np.roll(w, -1, axis=1) - 2.0 * w + np.roll(w, 1, axis=1)) / htheta**2


def _operator(w, phi, grid, t):
    g_lower, g_upper = boundary_slopes(w, phi, grid, t)
    return (LOG_LAPLACIAN.apply(w, grid.hx, g_lower, g_upper)
            + _theta_second_difference(w, grid.htheta))


def apply_log_diffusion_2d(state2d: SolutionState, phi: BoundaryCurvature,
                           grid: CylinderGrid, t: float) -> np.ndarray:
    """du/dt = Laplacian of log u, periodic in theta, Robin ghost nodes in x."""
    _check_state(state2d, grid)
    return _operator(state2d.w, phi, grid, t)


def compatibility_residual_2d(state: SolutionState, phi: BoundaryCurvature,
                              grid: CylinderGrid) -> Tuple[np.ndarray, np.ndarray]:
    """Per-angle outward residuals on the lower and upper circles."""
    _check_state(state, grid)
    slope_lower, slope_upper = outward_slopes(state.w, grid.hx)
    g_lower, g_upper = boundary_slopes(state.w, phi, grid, state.t)
    return slope_lower - g_lower, slope_upper - g_upper


def make_compatible_2d(profile, phi: BoundaryCurvature, grid: CylinderGrid,
                       blend_width: float, t: float = 0.0) -> SolutionState:
    """Collar correction along every angular line with phi(+-l, theta, t)."""
    profile = np.asarray(profile, dtype=float)
    if profile.shape != grid.shape or not np.all(profile > 0):
        raise PreconditionError(f'profile must be strictly positive with shape {grid.shape}')
    check_collar(blend_width, grid.l, grid.hx)
    w = np.log(profile)
    g_lower, g_upper = boundary_slopes(w, phi, grid, t)
    return SolutionState(t, blend_to_slopes(w, grid.hx, blend_width, lower=g_lower, upper=g_upper))


def _periodic_second_difference(n: int, h: float) -> sp.csr_matrix:
    main = np.full(n, -2.0 / h**2)
    off = np.full(n - 1, 1.0 / h**2)
    matrix = sp.diags([off, main, off], [-1, 0, 1], format='lil')
    matrix[0, n - 1] += 1.0 / h**2
    matrix[n - 1, 0] += 1.0 / h**2
    return matrix.tocsr()


class CylinderProblem:
    """Backward-Euler equations on the cylinder with a sparse Jacobian."""

    def __init__(self, grid: CylinderGrid, phi: BoundaryCurvature):
        self.grid = grid
        self.phi = phi
        nx, nt = grid.shape
        ab = LOG_LAPLACIAN.bands(nx, grid.hx, 0.0, 0.0)
        axial = sp.diags([ab[2, :-1], ab[1], ab[0, 1:]], [-1, 0, 1])
        angular = _periodic_second_difference(nt, grid.htheta)
        self._laplacian = (sp.kron(axial, sp.identity(nt))
                           + sp.kron(sp.identity(nx), angular)).tocsr()
        self._axial_lower = np.repeat(ab[2, :-1], nt).reshape(nx - 1, nt)
        self._axial_upper = np.repeat(ab[0, 1:], nt).reshape(nx - 1, nt)
        self._axial_diag = np.repeat(ab[1], nt).reshape(nx, nt)

    def residual(self, w, w_old, t, dt):
        return (np.exp(w) - np.exp(w_old)) / dt - _operator(w, self.phi, self.grid, t)

    def _boundary_diagonal(self, w, t):
        """d(boundary rows)/dw from the w-dependence of the ghost slopes."""
        g_lower, g_upper = boundary_slopes(w, self.phi, self.grid, t)
        extra = np.zeros_like(w)
        factor = LOG_LAPLACIAN.ghost_factor / self.grid.hx
        extra[0] = factor * 0.5 * g_lower
        extra[-1] = factor * 0.5 * g_upper
        return extra

    def solve_jacobian(self, w, t, dt, rhs):
        nx, nt = self.grid.shape
        diag = np.exp(w) / dt - self._boundary_diagonal(w, t)
        matrix = sp.diags(diag.ravel()) - self._laplacian

        lower = np.zeros((nx, nt))
        upper = np.zeros((nx, nt))
        lower[1:] = -self._axial_lower
        upper[:-1] = -self._axial_upper
        line_diag = diag - self._axial_diag + 2.0 / self.grid.htheta**2
        preconditioner = line_preconditioner(lower, line_diag, upper)
        delta = solve_preconditioned(matrix, rhs.ravel(), preconditioner, GMRES_RTOL)
        return delta.reshape(w.shape)

    def diagnose(self, state: SolutionState, dt: float, newton_iters: int) -> DiagnosticRow:
        grid = self.grid
        w, u, t = state.w, state.u, state.t
        lap = _operator(w, self.phi, grid, t)
        R = -lap / u
        weights = grid.cell_weights
        area = float(np.sum(weights * u))
        area_rate = float(np.sum(weights * lap))
        root = np.sqrt(u[[0, -1]])
        theta = grid.theta
        length = grid.htheta * float(root.sum())
        curvature = np.stack([self.phi(-1, theta, t), self.phi(1, theta, t)])
        int_k_ds = grid.htheta * float(np.sum(curvature * root))
        R_b = R[[0, -1]]
        spread = u.max(axis=1) - u.min(axis=1)
        return DiagnosticRow(
            t=t,
            dt=dt,
            newton_iters=newton_iters,
            u_min=float(u.min()),
            u_max=float(u.max()),
            mass=area / (2.0 * math.pi),
            R_min=float(R.min()),
            R_max=float(R.max()),
            area=area,
            length=length,
            gb_residual=-area_rate + 2.0 * int_k_ds,
            lap_min=float(lap[1:-1].min()),
            lap_max=float(lap[1:-1].max()),
            boundary_flux=area_rate / (2.0 * math.pi),
            area_rate=area_rate,
            r_boundary=float(np.sum(root * R_b) / root.sum()),
            extra={'theta_spread': float(spread.max())},
        )


def check_compatible_2d(state: SolutionState, phi: BoundaryCurvature, grid: CylinderGrid):
    lower, upper = compatibility_residual_2d(state, phi, grid)
    worst = float(max(np.abs(lower).max(), np.abs(upper).max()))
    if worst >= COMPATIBILITY_TOLERANCE:
        raise PreconditionError(f'initial data is not compatible: worst residual {worst:.3g}')


def integrate_cylinder(u0_2d: SolutionState, phi: BoundaryCurvature, grid: CylinderGrid,
                       cfg: SolverConfig, t_final: float,
                       output_times: Optional[Iterable[float]] = None) -> Trajectory:
    """The cylinder run alone, without comparison envelopes."""
    _check_state(u0_2d, grid)
    check_compatible_2d(u0_2d, phi, grid)
    problem = CylinderProblem(grid, phi)
    return integrate(
        problem, u0_2d, cfg, t_final, output_times, problem.diagnose,
        solver='cylinder2d',
        domain=grid.to_dict(),
        boundary=phi.to_dict(),
        exponent=1.5,
    )
