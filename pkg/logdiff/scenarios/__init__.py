"""Scenario files, runs, sweeps and the verification battery."""

from .loader import load_scenario, parse_scenario
from .models import NOT_APPLICABLE, SWEEPABLE, AnalysisTask, RunSummary, Scenario
from .postprocess import compare_scenarios, fit_csv
from .presets import Setup, build_setup, output_times
from .runner import RunResult, execute, exit_code, run_scenario, trajectory_csv
from .sweep import sweep, variant
from .verify import CheckResult, run_battery

__all__ = [
    'AnalysisTask',
    'CheckResult',
    'NOT_APPLICABLE',
    'RunResult',
    'RunSummary',
    'SWEEPABLE',
    'Scenario',
    'Setup',
    'build_setup',
    'compare_scenarios',
    'execute',
    'exit_code',
    'fit_csv',
    'load_scenario',
    'output_times',
    'parse_scenario',
    'run_battery',
    'run_scenario',
    'sweep',
    'trajectory_csv',
    'variant',
]
