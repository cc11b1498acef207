"""Execute scenarios, evaluate their analysis tasks and write result files."""

from __future__ import annotations
import csv
from dataclasses import dataclass
import io
import logging
import os
from pathlib import Path
import tempfile
import time
from typing import Optional, Tuple

import numpy as np
from werkzeug.utils import secure_filename

from ..analysis.bounds import check_mass_bound_blowdown, check_mass_bound_blowup
from ..analysis.fitting import fit_trajectory
from ..analysis.moments import moment_inequality_slack, moment_series
from ..analysis.monitors import (
    area_convexity_slack,
    curvature_envelope_slack,
    decay_floor,
    flatness_ratio,
    gauss_bonnet_relative_residual,
    growth_ceiling,
    mass_law_relative_residual,
    sign_preservation,
)
from ..config import get_config
from ..core.models import RobinBoundary, SolverConfig
from ..cylinder.envelopes import run_cylinder
from ..disc.radial import run_disc
from ..errors import LogDiffError
from ..geometry.curvature import area_law_residual, area_length_check, length_law_residual
from ..solver.line1d import run
from ..solver.models import Termination, Trajectory
from .models import NOT_APPLICABLE, AnalysisTask, RunSummary, Scenario
from .presets import Setup, build_setup, output_times

logger = logging.getLogger(__name__)

BASE_COLUMNS = ['t', 'u_min', 'u_max', 'mass', 'R_min', 'R_max', 'area', 'length', 'gb_residual']
EXTRA_COLUMNS = {
    'line1d': [],
    'disc': ['u_boundary'],
    'cylinder2d': ['theta_spread'],
}


@dataclass
class RunResult:
    scenario: Scenario
    setup: Setup
    trajectory: Trajectory
    summary: RunSummary


def not_applicable(reason: str) -> dict:
    return {'status': NOT_APPLICABLE, 'reason': reason}


def _or_na(value):
    return NOT_APPLICABLE if value is None else value


def _max_abs(values) -> float:
    values = np.asarray(values, dtype=float)
    return float(np.max(np.abs(values))) if values.size else 0.0


def solver_config(scenario: Scenario) -> SolverConfig:
    return SolverConfig.from_dict({**get_config().SOLVER_DEFAULTS, **scenario.solver_config})


def execute(scenario: Scenario) -> RunResult:
    """Build, run and analyse one scenario."""
    started = time.perf_counter()
    setup = build_setup(scenario)
    cfg = solver_config(scenario)
    times = output_times(scenario)
    if setup.solver == 'line1d':
        traj = run(setup.state, setup.boundary, setup.grid, cfg, scenario.t_final, times)
    elif setup.solver == 'disc':
        traj = run_disc(setup.state, setup.boundary, setup.grid, cfg, scenario.t_final, times)
    else:
        wants_envelope = any(task.task == 'envelope' for task in scenario.analysis)
        traj = run_cylinder(setup.state, setup.boundary, setup.grid, cfg, scenario.t_final,
                            times, envelopes=wants_envelope)
    summary = summarize(scenario, setup, traj)
    summary.wall_time = time.perf_counter() - started
    return RunResult(scenario, setup, traj, summary)


def summarize(scenario: Scenario, setup: Setup, traj: Trajectory) -> RunSummary:
    summary = RunSummary(
        name=scenario.name,
        solver=setup.solver,
        termination=traj.termination.value,
        t_est=_or_na(traj.t_est),
        final_time=traj.final_time,
        steps=len(traj.rows),
    )
    summary.monitors.update(_default_monitors(setup, traj))
    for task in scenario.analysis:
        section, value = _run_task(task, setup, traj)
        getattr(summary, section)[task.label] = value
    return summary


def _default_monitors(setup: Setup, traj: Trajectory) -> dict:
    sign = sign_preservation(traj)
    _, mass_residual = mass_law_relative_residual(traj)
    _, gb = gauss_bonnet_relative_residual(traj)
    monitors = {
        'sign_preservation': sign.to_dict() if sign.initial_sign != 'mixed'
        else not_applicable('d_xx log u has no strict sign initially'),
        'mass_law_max_relative_residual': _max_abs(mass_residual),
        'gauss_bonnet_max_relative_residual': _max_abs(gb),
    }
    if setup.expected_T is not None and traj.t_est is not None:
        monitors['t_est_relative_error'] = abs(traj.t_est - setup.expected_T) / setup.expected_T
    else:
        monitors['t_est_relative_error'] = not_applicable('no exact singular time for this setup')
    return monitors


def _run_task(task: AnalysisTask, setup: Setup, traj: Trajectory) -> Tuple[str, object]:
    section = {'fit': 'fits', 'mass_bound_blowdown': 'bounds', 'mass_bound_blowup': 'bounds',
               'moments': 'bounds'}.get(task.task, 'monitors')
    try:
        return section, _TASKS[task.task](task, setup, traj)
    except LogDiffError as exc:
        logger.warning('Analysis task %s not applicable: %s', task.label, exc)
        return section, not_applicable(str(exc))


def _require_interval(setup: Setup):
    if setup.solver != 'line1d' or not isinstance(setup.boundary, RobinBoundary):
        raise LogDiffError(f'task needs an interval run with a Robin boundary, not {setup.solver}')


def _fit(task, setup, traj):
    return fit_trajectory(traj, task.column, task.model, task.window).to_dict()


def _blowdown(task, setup, traj):
    _require_interval(setup)
    return check_mass_bound_blowdown(traj, setup.boundary, setup.grid).to_dict()


def _blowup(task, setup, traj):
    _require_interval(setup)
    return check_mass_bound_blowup(traj, setup.boundary, setup.grid).to_dict()


def _moments(task, setup, traj):
    _require_interval(setup)
    series = moment_series(traj, task.n, task.kind or 'r')
    slack = moment_inequality_slack(series, setup.boundary, setup.grid)
    if not slack.applicable:
        return not_applicable(slack.reason)
    return {'final_value': float(series.values[-1]), 'worst_slack': slack.worst}


def _flatness(task, setup, traj):
    _, ratio = flatness_ratio(traj)
    return {
        'initial': float(ratio[0]),
        'final': float(ratio[-1]),
        'max': float(ratio.max()),
        'increasing': bool(np.all(np.diff(ratio) >= 0)),
    }


def _curvature_envelope(task, setup, traj):
    _, R_max = traj.series('R_max')
    if R_max[0] >= 0:
        return not_applicable(f'R_max(0) = {R_max[0]:.6g} is not negative')
    _, slack = curvature_envelope_slack(traj)
    return {'B': float(R_max[0]), 'worst_slack': float(slack.min())}


def _area_convexity(task, setup, traj):
    _, slack = area_convexity_slack(traj)
    return {'worst_slack': float(slack.min())}


def _area_length(task, setup, traj):
    _require_interval(setup)
    reports = [area_length_check(s, setup.boundary, setup.grid, task.alpha) for s in traj.samples]
    applicable = [r for r in reports if r.applicable]
    if not applicable:
        return not_applicable(reports[0].reason)
    return {
        'applicable_states': len(applicable),
        'all_hold': all(r.holds for r in applicable),
        'worst_slack': min(r.slack for r in applicable),
    }


def _growth_ceiling(task, setup, traj):
    return {'max_log_u_max_over_t': growth_ceiling(traj, task.window)}


def _decay_floor(task, setup, traj):
    return {'min_log_u_min_over_t2': decay_floor(traj, task.window)}


def _area_law(task, setup, traj):
    _, residual = area_law_residual(traj)
    return {'max_residual': _max_abs(residual)}


def _length_law(task, setup, traj):
    _, residual = length_law_residual(traj)
    return {'max_residual': _max_abs(residual)}


def _envelope(task, setup, traj):
    report = traj.extras.get('envelope')
    if report is None:
        return not_applicable('envelopes are computed for cylinder2d runs only')
    return report.to_dict()


_TASKS = {
    'fit': _fit,
    'mass_bound_blowdown': _blowdown,
    'mass_bound_blowup': _blowup,
    'moments': _moments,
    'flatness': _flatness,
    'curvature_envelope': _curvature_envelope,
    'area_convexity': _area_convexity,
    'area_length': _area_length,
    'growth_ceiling': _growth_ceiling,
    'decay_floor': _decay_floor,
    'area_law': _area_law,
    'length_law': _length_law,
    'envelope': _envelope,
}


def csv_columns(solver: str) -> list:
    return BASE_COLUMNS + EXTRA_COLUMNS[solver]


def trajectory_csv(traj: Trajectory) -> str:
    """Diagnostic rows as CSV text, floats with 17 significant digits."""
    columns = csv_columns(traj.solver)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    for row in traj.all_rows:
        values = [getattr(row, c) if c in BASE_COLUMNS else row.extra[c] for c in columns]
        writer.writerow(['%.17g' % v for v in values])
    return buffer.getvalue()


def _stage(path: Path, text: str) -> str:
    """Write text to a temporary file next to path and return its name."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f'.{path.name}.', suffix='.tmp')
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
    except BaseException:
        os.unlink(tmp)
        raise
    return tmp


def atomic_write(path: Path, text: str):
    """Write through a temporary file in the target directory, then rename."""
    tmp = _stage(path, text)
    try:
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def output_stem(name: str) -> str:
    return secure_filename(name) or 'scenario'


def write_outputs(result: RunResult, output_dir) -> Tuple[Path, Path]:
    """Stage the CSV and summary, then move the summary in before the CSV.

    A failure while writing leaves neither file; a CSV is never renamed into
    place without its summary.
    """
    output_dir = Path(output_dir)
    stem = output_stem(result.scenario.name)
    csv_path = output_dir / f'{stem}.csv'
    summary_path = output_dir / f'{stem}.summary.json'
    staged = []
    try:
        staged.append(_stage(summary_path, result.summary.to_json()))
        staged.append(_stage(csv_path, trajectory_csv(result.trajectory)))
        os.replace(staged[0], summary_path)
        os.replace(staged[1], csv_path)
    except BaseException:
        for tmp in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)
        raise
    logger.info('Wrote %s and %s', csv_path, summary_path)
    return csv_path, summary_path


def run_scenario(scenario: Scenario, output_dir: Optional[str] = None) -> RunResult:
    """Execute a scenario and write <name>.csv and <name>.summary.json."""
    result = execute(scenario)
    write_outputs(result, output_dir or get_config().OUTPUT_DIR)
    return result


def exit_code(summary: RunSummary) -> int:
    """0 for clean or singular termination, 1 for numerical failure."""
    return 1 if summary.termination == Termination.STEP_UNDERFLOW.value else 0
