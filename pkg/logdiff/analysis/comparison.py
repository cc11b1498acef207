"""Ordering of two runs started from ordered data."""

from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import logging
from typing import Iterable, Optional

import numpy as np

from ..core.models import Interval1D, SolutionState, SolverConfig
from ..solver.line1d import run

logger = logging.getLogger(__name__)


@dataclass
class ComparisonReport:
    """Worst gap v - u over common output times; valid=False marks a degenerate pair."""
    valid: bool
    reason: str = ''
    flux_ordered: Optional[bool] = None
    min_gap: Optional[float] = None
    min_gap_time: Optional[float] = None
    first_violation: Optional[float] = None
    common_times: int = 0
    low_termination: str = ''
    high_termination: str = ''

    @property
    def ordered(self) -> Optional[bool]:
        if not self.valid:
            return None
        return self.first_violation is None

    def to_dict(self) -> dict:
        return {
            'valid': self.valid,
            'reason': self.reason,
            'flux_ordered': self.flux_ordered,
            'ordered': self.ordered,
            'min_gap': self.min_gap,
            'min_gap_time': self.min_gap_time,
            'first_violation': self.first_violation,
            'common_times': self.common_times,
            'low_termination': self.low_termination,
            'high_termination': self.high_termination,
        }


def boundary_flux_ordered(high: SolutionState, bc_low, bc_high) -> bool:
    """Whether the upper law dominates the lower one at the upper boundary values."""
    ordered = True
    for side, w_b in ((-1, high.w[0]), (1, high.w[-1])):
        g_high, _ = bc_high.log_slope(w_b, high.t, side)
        g_low, _ = bc_low.log_slope(w_b, high.t, side)
        ordered = ordered and bool(g_high >= g_low)
    return ordered


def comparison_harness(u0_low: SolutionState, u0_high: SolutionState, bc_low, bc_high,
                       dom: Interval1D, cfg: SolverConfig, t_final: float,
                       output_times: Optional[Iterable[float]] = None) -> ComparisonReport:
    """Run both problems concurrently and track min(v - u) at shared output times."""
    gap0 = u0_high.u - u0_low.u
    if not np.all(gap0 > 0):
        reason = 'upper data is not strictly above lower data at every node'
        logger.warning('Degenerate comparison pair: %s', reason)
        return ComparisonReport(False, reason)
    flux_ordered = boundary_flux_ordered(u0_high, bc_low, bc_high)
    if not flux_ordered:
        logger.warning('Boundary laws are not ordered at t=0; ordering may fail')

    output_times = list(output_times or np.linspace(0.0, t_final, 21)[1:])
    with ThreadPoolExecutor(max_workers=2) as pool:
        low_future = pool.submit(run, u0_low, bc_low, dom, cfg, t_final, output_times)
        high_future = pool.submit(run, u0_high, bc_high, dom, cfg, t_final, output_times)
        low, high = low_future.result(), high_future.result()

    high_by_t = {round(s.t, 12): s for s in high.samples}
    report = ComparisonReport(True, flux_ordered=flux_ordered,
                              low_termination=low.termination.value,
                              high_termination=high.termination.value)
    for sample in low.samples:
        match = high_by_t.get(round(sample.t, 12))
        if match is None:
            continue
        gap = float(np.min(match.u - sample.u))
        report.common_times += 1
        if report.min_gap is None or gap < report.min_gap:
            report.min_gap, report.min_gap_time = gap, sample.t
        if gap <= 0 and report.first_violation is None:
            report.first_violation = sample.t
    return report
