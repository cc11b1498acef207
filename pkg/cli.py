#!/usr/bin/env python3
"""Command-line interface for the logarithmic diffusion laboratory.

Usage:
    python cli.py run docs/scenarios/sech2.yaml            # Run one scenario
    python cli.py sweep docs/scenarios/sech2.yaml --param n --values 65,129,257
    python cli.py verify --quick                           # Verification battery
    python cli.py compare low.yaml high.yaml               # Comparison principle
    python cli.py fit out/sech2.csv --model linear_vanishing --window 0.5,0.9
"""

import argparse
import json
import os
import sys
from pathlib import Path

# Add the project directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from logdiff import configure_logging
from logdiff.config import get_config
from logdiff.errors import LogDiffError, ScenarioError
from logdiff.scenarios import (
    compare_scenarios,
    exit_code,
    fit_csv,
    load_scenario,
    run_battery,
    run_scenario,
    sweep,
)
from logdiff.scenarios.runner import output_stem
from logdiff.solver import Termination

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2

STEP_UNDERFLOW = Termination.STEP_UNDERFLOW.value


def _floats(text: str):
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma-separated numbers, got {text!r}')


def _window(text: str):
    values = _floats(text)
    if len(values) != 2 or values[0] >= values[1]:
        raise argparse.ArgumentTypeError(f'window must be t0,t1 with t0 < t1, got {text!r}')
    return tuple(values)


def _show(value):
    return f'{value:.6g}' if isinstance(value, float) else str(value)


def run_command(filepath: str, output: str = None):
    """Run a scenario file and print its summary."""
    scenario = load_scenario(filepath)
    output = output or get_config().OUTPUT_DIR
    print(f"Running: {scenario.name} ({scenario.solver})")
    result = run_scenario(scenario, output)
    summary = result.summary

    print(f"\n{'=' * 50}")
    print(f"Termination: {summary.termination}")
    print(f"T_est: {_show(summary.t_est)}")
    print(f"Final time: {_show(summary.final_time)}")
    print(f"Steps: {summary.steps}")
    print(f"{'=' * 50}")
    for section in ('fits', 'bounds', 'monitors'):
        entries = getattr(summary, section)
        if not entries:
            continue
        print(f"\n{section.upper()}:")
        for label, value in entries.items():
            if isinstance(value, dict):
                value = ', '.join(f'{k}={_show(v)}' for k, v in value.items()
                                  if not isinstance(v, (list, dict)))
            print(f"  - {label}: {_show(value)}")

    stem = output_stem(scenario.name)
    print(f"\nSaved to: {Path(output) / stem}.csv")
    return exit_code(summary)


def sweep_command(filepath: str, parameter: str, values, output: str = None,
                  workers: int = None):
    """Run one scenario per parameter value and print the sweep table."""
    scenario = load_scenario(filepath)
    print(f"Sweeping {parameter} over {len(values)} values of {scenario.name}")
    table = sweep(scenario, parameter, values, output, workers)

    print(f"\n{'value':>12}  {'termination':<14}  {'T_est':>12}  {'key fit':>12}")
    print('-' * 56)
    for row in table:
        termination = row['termination'] if not row['error'] else 'error'
        print(f"{_show(row['value']):>12}  {termination:<14}  "
              f"{_show(row['t_est']):>12}  {_show(row['key_fit']):>12}")
    failed = [row for row in table if row['error'] or row['termination'] == STEP_UNDERFLOW]
    for row in failed:
        print(f"  ! {row['name']}: {row['error'] or row['termination']}")
    return EXIT_FAILED if failed else EXIT_OK


def verify_command(quick: bool = False):
    """Run the verification battery and print a pass/fail table."""
    print(f"Verification battery ({'quick' if quick else 'full'})")
    print('=' * 50)
    results = run_battery(quick)
    for result in results:
        mark = 'PASS' if result.passed else 'FAIL'
        print(f"  [{mark}] {result.name}: {result.detail}")
    failed = sum(1 for r in results if not r.passed)
    print('=' * 50)
    print(f"{len(results) - failed} passed, {failed} failed")
    return EXIT_FAILED if failed else EXIT_OK


def compare_command(low_path: str, high_path: str, output: str = None):
    """Run two ordered scenarios and report whether the ordering persists."""
    low, high = load_scenario(low_path), load_scenario(high_path)
    report, path = compare_scenarios(low, high, output)
    print(f"\n{'=' * 50}")
    if not report.valid:
        print(f"Degenerate pair: {report.reason}")
    else:
        print(f"Ordered: {report.ordered}")
        print(f"Boundary laws ordered: {report.flux_ordered}")
        print(f"Minimum gap: {_show(report.min_gap)} at t={_show(report.min_gap_time)}")
        print(f"Common output times: {report.common_times}")
    print(f"{'=' * 50}")
    print(f"\nSaved to: {path}")
    return EXIT_OK if report.valid and report.ordered else EXIT_FAILED


def fit_command(csv_path: str, model: str, column: str, window=None):
    """Fit a rate model to one column of a trajectory CSV."""
    if not Path(csv_path).exists():
        print(f"Error: File not found: {csv_path}")
        return EXIT_INVALID
    fit, path = fit_csv(csv_path, model, column, window)
    print(json.dumps(fit.to_dict(), indent=2))
    print(f"\nSaved to: {path}")
    return EXIT_OK


def main(argv=None):
    parser = argparse.ArgumentParser(
        description='Logarithmic diffusion laboratory CLI',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='store_true',
                        help='Log at DEBUG level')

    subparsers = parser.add_subparsers(dest='command', help='Commands')

    # Run command
    run_parser = subparsers.add_parser('run', parents=[common], help='Run a scenario file')
    run_parser.add_argument('filepath', help='Path to a YAML scenario')
    run_parser.add_argument('-o', '--output', help='Output directory')

    # Sweep command
    sweep_parser = subparsers.add_parser('sweep', parents=[common], help='Sweep one scenario parameter')
    sweep_parser.add_argument('filepath', help='Path to a YAML scenario')
    sweep_parser.add_argument('--param', required=True, help='p, gamma, l, n or dt_init')
    sweep_parser.add_argument('--values', required=True, type=_floats,
                              help='Comma-separated values')
    sweep_parser.add_argument('-o', '--output', help='Output directory')
    sweep_parser.add_argument('-j', '--workers', type=int, help='Worker processes')

    # Verify command
    verify_parser = subparsers.add_parser('verify', parents=[common], help='Run the verification battery')
    verify_parser.add_argument('--quick', action='store_true',
                               help='Reduced grids with looser tolerances')

    # Compare command
    compare_parser = subparsers.add_parser('compare', parents=[common], help='Check ordering of two runs')
    compare_parser.add_argument('low', help='Scenario with the lower data')
    compare_parser.add_argument('high', help='Scenario with the upper data')
    compare_parser.add_argument('-o', '--output', help='Output directory')

    # Fit command
    fit_parser = subparsers.add_parser('fit', parents=[common], help='Fit a rate model to a CSV column')
    fit_parser.add_argument('csv', help='Trajectory CSV written by run')
    fit_parser.add_argument('--model', required=True,
                            choices=['power', 'exponential', 'gaussian_log', 'linear_vanishing'])
    fit_parser.add_argument('--column', default='u_min', help='Column to fit (default u_min)')
    fit_parser.add_argument('--window', type=_window, help='t0,t1')

    args = parser.parse_args(argv)
    configure_logging('DEBUG' if getattr(args, 'verbose', False) else None)

    try:
        if args.command == 'run':
            return run_command(args.filepath, args.output)
        elif args.command == 'sweep':
            return sweep_command(args.filepath, args.param, args.values, args.output,
                                 args.workers)
        elif args.command == 'verify':
            return verify_command(args.quick)
        elif args.command == 'compare':
            return compare_command(args.low, args.high, args.output)
        elif args.command == 'fit':
            return fit_command(args.csv, args.model, args.column, args.window)
        else:
            parser.print_help()
            return EXIT_FAILED
    except ScenarioError as e:
        print(f"Error: {e}")
        return EXIT_INVALID
    except LogDiffError as e:
        print(f"Error: {e}")
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
