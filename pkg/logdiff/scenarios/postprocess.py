"""Comparison of two scenario files and rate fits on written CSVs."""

from __future__ import annotations
import csv
import json
import logging
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from ..analysis.comparison import ComparisonReport, comparison_harness
from ..analysis.fitting import RateFit, fit_rate
from ..config import get_config
from ..errors import PreconditionError, ScenarioError
from .models import Scenario
from .presets import build_setup, output_times
from .runner import atomic_write, output_stem, solver_config

logger = logging.getLogger(__name__)


def compare_scenarios(low: Scenario, high: Scenario,
                      output_dir: Optional[str] = None) -> Tuple[ComparisonReport, Path]:
    """Run the ordered pair concurrently; writes <low>_vs_<high>.compare.json."""
    for scenario in (low, high):
        if scenario.solver != 'line1d':
            raise ScenarioError(f'compare needs line1d scenarios, {scenario.name!r} uses {scenario.solver}')
    low_setup, high_setup = build_setup(low), build_setup(high)
    if low_setup.grid != high_setup.grid:
        raise ScenarioError('compared scenarios must share the same domain')
    report = comparison_harness(
        low_setup.state, high_setup.state, low_setup.boundary, high_setup.boundary,
        low_setup.grid, solver_config(low), low.t_final, output_times(low),
    )
    path = Path(output_dir or get_config().OUTPUT_DIR) / (
        f'{output_stem(low.name)}_vs_{output_stem(high.name)}.compare.json'
    )
    atomic_write(path, json.dumps(report.to_dict(), indent=2, sort_keys=True))
    logger.info('Wrote %s', path)
    return report, path


def read_series(csv_path: Union[str, Path], column: str) -> Tuple[np.ndarray, np.ndarray]:
    with open(csv_path, newline='', encoding='utf-8') as handle:
        rows = list(csv.DictReader(handle))
    if not rows:
        raise PreconditionError(f'{csv_path} has no data rows')
    if column not in rows[0]:
        raise PreconditionError(f'{csv_path} has no column {column!r}')
    t = np.array([float(r['t']) for r in rows])
    values = np.array([float(r[column]) for r in rows])
    return t, values


def fit_csv(csv_path: Union[str, Path], model: str, column: str = 'u_min',
            window: Optional[Tuple[float, float]] = None) -> Tuple[RateFit, Path]:
    """Fit one column of a trajectory CSV; writes <stem>.fit_<column>_<model>.json beside it."""
    csv_path = Path(csv_path)
    t, values = read_series(csv_path, column)
    fit = fit_rate(t, values, model, window)
    path = csv_path.with_name(f'{csv_path.stem}.fit_{column}_{fit.model.value}.json')
    atomic_write(path, json.dumps(fit.to_dict(), indent=2, sort_keys=True))
    logger.info('Wrote %s', path)
    return fit, path
