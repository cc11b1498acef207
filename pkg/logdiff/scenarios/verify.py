"""Built-in verification battery."""

from __future__ import annotations
from dataclasses import dataclass
import logging
import math
from typing import Callable, List, Tuple

import numpy as np

from ..analysis.fitting import fit_rate
from ..config import QuickConfig, get_config
from ..core.compatibility import compatibility_residual, make_compatible_initial_data
from ..core.models import Interval1D, RobinBoundary, SolutionState, SolverConfig
from ..core.stencils import LOG_LAPLACIAN, GhostStencil
from ..cylinder.grid import BoundaryCurvature, CylinderGrid
from ..cylinder.solver2d import apply_log_diffusion_2d
from ..disc.radial import (
    CurvatureBoundary,
    RadialGrid,
    hemisphere_oracle,
    make_compatible_radial,
    run_disc,
)
from ..geometry.profiles import MetricProfile, find_compatible_length
from ..solver.line1d import apply_log_diffusion, run
from ..solver.manufactured import spatial_order, temporal_order
from ..solver.oracles import SechSquaredOracle

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {'name': self.name, 'passed': self.passed, 'detail': self.detail}


def _spatial_order(settings, stencil):
    study = spatial_order(settings.VERIFY_SPATIAL_NODES, stencil=stencil)
    order = study.observed
    return abs(order - 2.0) <= settings.VERIFY_ORDER_SLACK, f'observed order {order:.3f}'


def _temporal_order(settings, stencil):
    n = settings.VERIFY_SPATIAL_NODES[0]
    study = temporal_order(n, stencil=stencil)
    order = study.observed
    return abs(order - 1.0) <= 0.2, f'observed order {order:.3f}'


def _sech2_oracle(settings, stencil):
    oracle = SechSquaredOracle(c=1.0, T=1.0, l=1.0)
    dom = Interval1D(1.0, settings.VERIFY_ORACLE_NODES)
    bc = oracle.boundary()
    u0 = make_compatible_initial_data(oracle.u(dom.x), bc, dom, 0.2)
    traj = run(u0, bc, dom, SolverConfig(dt_max=1e-2), 1.5, stencil=stencil)
    if traj.t_est is None:
        return False, f'terminated with {traj.termination.value}'
    error = abs(traj.t_est - oracle.T) / oracle.T
    return error <= settings.VERIFY_T_EST_TOLERANCE, f'T_est={traj.t_est:.6f} (rel. error {error:.2e})'


def _hemisphere_oracle(settings, stencil):
    grid = RadialGrid(1.0, settings.VERIFY_ORACLE_NODES)
    bcd = CurvatureBoundary(0.0, 1.0)
    u0 = make_compatible_radial(hemisphere_oracle(grid.r, 0.0, 1.0), bcd, grid, 0.2)
    traj = run_disc(u0, bcd, grid, SolverConfig(dt_max=1e-2), 1.5)
    if traj.t_est is None:
        return False, f'terminated with {traj.termination.value}'
    error = abs(traj.t_est - 1.0)
    return error <= settings.VERIFY_T_EST_TOLERANCE, f'T_est={traj.t_est:.6f}'


def _mass_law(settings, stencil):
    dom = Interval1D(1.0, settings.VERIFY_SPATIAL_NODES[-1])
    bc = RobinBoundary(0.5, 1.0)
    u0 = make_compatible_initial_data(np.ones(dom.n), bc, dom, 0.2)
    traj = run(u0, bc, dom, SolverConfig(dt_max=1e-2), 1.0, stencil=stencil)
    t, m = traj.series('mass')
    worst = float(np.max(np.abs(m - m[0] - 4.0 * bc.gamma * t) / (1.0 + abs(bc.gamma) * t)))
    return worst <= 1e-4, f'max |m - m0 - 4 gamma t| = {worst:.2e}'


def _gauss_bonnet(settings, stencil):
    dom = Interval1D(1.0, settings.VERIFY_SPATIAL_NODES[-1])
    bc = RobinBoundary(1.0, 1.5)
    u0 = make_compatible_initial_data(np.exp(dom.x**2 - 1.0), bc, dom, 0.2)
    traj = run(u0, bc, dom, SolverConfig(), 0.5, stencil=stencil)
    _, gb = traj.series('gb_residual')
    _, rate = traj.series('area_rate')
    worst = float(np.max(np.abs(gb) / (1.0 + np.abs(rate))))
    return worst <= 1e-8, f'max Gauss-Bonnet residual {worst:.2e}'


def _compatibility(settings, stencil):
    dom = Interval1D(1.0, settings.VERIFY_SPATIAL_NODES[0])
    worst = 0.0
    for gamma in (-2.0, -0.5, 0.5, 2.0):
        for p in (-1.0, 0.5, 1.5, 3.0):
            bc = RobinBoundary(gamma, p)
            state = make_compatible_initial_data(np.ones(dom.n), bc, dom, 0.3)
            worst = max(worst, *map(abs, compatibility_residual(state, bc, dom)))
    return worst < 1e-8, f'worst residual {worst:.2e}'


def _fit_recovery(settings, stencil):
    t = np.linspace(10.0, 100.0, 40)
    fit = fit_rate(t, t**1.5, 'power', (10.0, 100.0))
    return abs(fit.parameter - 1.5) < 1e-6, f'alpha={fit.parameter:.9f}'


def _bisection(settings, stencil):
    profile = MetricProfile(
        f=lambda x: 2.0 - x + 0.5 * x**2,
        l=1.0,
        df=lambda x: x - 1.0,
        d2f=lambda x: 1.0,
        d3f=lambda x: 0.0,
    )
    root = find_compatible_length(profile, (0.5, 1.5))
    return abs(root - 1.0) < 1e-7, f'root={root:.9f}'


def _reduction(settings, stencil):
    grid = CylinderGrid(1.0, settings.VERIFY_SPATIAL_NODES[0], 8)
    dom = grid.axis
    w = np.log(1.0 + 0.5 * np.cos(dom.x))
    state1 = SolutionState(0.0, w)
    state2 = SolutionState(0.0, np.repeat(w[:, None], grid.ntheta, axis=1))
    field1 = apply_log_diffusion(state1, RobinBoundary(0.7, 1.5), dom, stencil)
    field2 = apply_log_diffusion_2d(state2, BoundaryCurvature.constant(0.7), grid, 0.0)
    worst = float(np.max(np.abs(field2 - field1[:, None])))
    return worst < 1e-9 * max(1.0, float(np.max(np.abs(field1)))), f'max difference {worst:.2e}'


CHECKS: List[Tuple[str, Callable]] = [
    ('manufactured spatial order', _spatial_order),
    ('manufactured temporal order', _temporal_order),
    ('sech2 singular time', _sech2_oracle),
    ('hemisphere singular time', _hemisphere_oracle),
    ('mass law', _mass_law),
    ('Gauss-Bonnet identity', _gauss_bonnet),
    ('compatible data constructor', _compatibility),
    ('rate fit recovery', _fit_recovery),
    ('compatible length bisection', _bisection),
    ('cylinder to interval reduction', _reduction),
]


def run_battery(quick: bool = False, stencil: GhostStencil = LOG_LAPLACIAN) -> List[CheckResult]:
    """Run every check; `stencil` replaces the interval operator for negative controls."""
    settings = QuickConfig if quick else get_config()
    results = []
    for name, check in CHECKS:
        try:
            passed, detail = check(settings, stencil)
        except Exception as exc:
            logger.exception('Check %s raised', name)
            passed, detail = False, f'{type(exc).__name__}: {exc}'
        logger.info('%s: %s (%s)', name, 'pass' if passed else 'FAIL', detail)
        results.append(CheckResult(name, bool(passed), detail))
    return results
