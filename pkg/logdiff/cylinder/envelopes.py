"""One-dimensional comparison envelopes for cylinder runs."""

from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import logging
from typing import Iterable, List, Optional

import numpy as np

from ..core.compatibility import default_blend_width, make_compatible_initial_data
from ..core.models import Interval1D, RobinBoundary, SolutionState, SolverConfig
from ..errors import PreconditionError
from ..solver.line1d import run
from ..solver.models import Trajectory
from .grid import BoundaryCurvature, CylinderGrid
from .solver2d import integrate_cylinder

logger = logging.getLogger(__name__)

ENVELOPE_SCALE = 1.5
MAX_SCALINGS = 60


@dataclass
class EnvelopeRow:
    t: float
    lower_gap: float
    upper_gap: float
    contained: bool

    def to_dict(self) -> dict:
        return {
            't': self.t,
            'lower_gap': self.lower_gap,
            'upper_gap': self.upper_gap,
            'contained': self.contained,
        }


@dataclass
class EnvelopeReport:
    """Ordering of the cylinder solution against the 1D envelopes at shared output times."""
    gamma_upper: float
    gamma_lower: float
    tolerance: float
    rows: List[EnvelopeRow] = field(default_factory=list)
    upper_termination: str = ''
    lower_termination: str = ''

    @property
    def contained(self) -> bool:
        return bool(self.rows) and all(r.contained for r in self.rows)

    def to_dict(self) -> dict:
        return {
            'gamma_upper': self.gamma_upper,
            'gamma_lower': self.gamma_lower,
            'tolerance': self.tolerance,
            'contained': self.contained,
            'upper_termination': self.upper_termination,
            'lower_termination': self.lower_termination,
            'rows': [r.to_dict() for r in self.rows],
        }


def _ordered_constant(bc: RobinBoundary, dom: Interval1D, start: float, above: float = None,
                      below: float = None) -> SolutionState:
    """Compatible near-constant data strictly above `above` or below `below`."""
    blend = default_blend_width(dom.l, dom.h)
    level = start
    for _ in range(MAX_SCALINGS):
        state = make_compatible_initial_data(np.full(dom.n, level), bc, dom, blend)
        u = state.u
        if above is not None and u.min() > above:
            return state
        if below is not None and u.max() < below:
            return state
        level = level * ENVELOPE_SCALE if above is not None else level / ENVELOPE_SCALE
    raise PreconditionError('could not place envelope data around the initial state')


def envelope_initial_data(u0_2d: SolutionState, phi: BoundaryCurvature, grid: CylinderGrid,
                          t_final: float):
    """Boundary data and initial states of the upper and lower envelope runs."""
    phi_min, phi_max = phi.extremes(grid.theta, t_final)
    dom = grid.axis
    u = u0_2d.u
    upper_bc = RobinBoundary(phi_max, 1.5)
    lower_bc = RobinBoundary(phi_min, 1.5)
    v0 = _ordered_constant(upper_bc, dom, ENVELOPE_SCALE * u.max(), above=u.max())
    z0 = _ordered_constant(lower_bc, dom, u.min() / ENVELOPE_SCALE, below=u.min())
    return (upper_bc, v0), (lower_bc, z0)


def compare_with_envelopes(traj2d: Trajectory, upper: Trajectory, lower: Trajectory,
                           gamma_upper: float, gamma_lower: float,
                           tolerance: float) -> EnvelopeReport:
    report = EnvelopeReport(gamma_upper, gamma_lower, tolerance,
                            upper_termination=upper.termination.value,
                            lower_termination=lower.termination.value)
    upper_by_t = {round(s.t, 12): s for s in upper.samples}
    lower_by_t = {round(s.t, 12): s for s in lower.samples}
    for sample in traj2d.samples:
        key = round(sample.t, 12)
        if key not in upper_by_t or key not in lower_by_t:
            continue
        u = sample.u
        lower_gap = float(np.min(u.min(axis=1) - lower_by_t[key].u))
        upper_gap = float(np.min(upper_by_t[key].u - u.max(axis=1)))
        report.rows.append(EnvelopeRow(
            sample.t, lower_gap, upper_gap,
            lower_gap >= -tolerance and upper_gap >= -tolerance,
        ))
    return report


def run_cylinder(u0_2d: SolutionState, phi: BoundaryCurvature, grid: CylinderGrid,
                 cfg: SolverConfig, t_final: float,
                 output_times: Optional[Iterable[float]] = None,
                 envelopes: bool = True, tolerance: float = 1e-6) -> Trajectory:
    """Cylinder run plus the upper (max phi) and lower (min phi) 1D envelope runs.

    The envelope report lands in traj.extras['envelope'].
    """
    output_times = list(output_times or [])
    if not envelopes:
        return integrate_cylinder(u0_2d, phi, grid, cfg, t_final, output_times)

    (upper_bc, v0), (lower_bc, z0) = envelope_initial_data(u0_2d, phi, grid, t_final)
    dom = grid.axis
    with ThreadPoolExecutor(max_workers=2) as pool:
        upper_future = pool.submit(run, v0, upper_bc, dom, cfg, t_final, output_times)
        lower_future = pool.submit(run, z0, lower_bc, dom, cfg, t_final, output_times)
        traj = integrate_cylinder(u0_2d, phi, grid, cfg, t_final, output_times)
        upper, lower = upper_future.result(), lower_future.result()

    report = compare_with_envelopes(traj, upper, lower, upper_bc.gamma, lower_bc.gamma, tolerance)
    if not report.contained:
        logger.warning('Cylinder solution left its envelopes at %d output times',
                       sum(not r.contained for r in report.rows))
    traj.extras['envelope'] = report
    return traj
