"""Parameter sweeps over independent scenario runs."""

from __future__ import annotations
from concurrent.futures import ProcessPoolExecutor
import csv
import io
import logging
from pathlib import Path
from typing import List, Optional, Sequence

from ..config import get_config
from ..errors import ScenarioError
from .models import NOT_APPLICABLE, SWEEPABLE, Scenario
from .runner import atomic_write, output_stem, run_scenario

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ['value', 'name', 'termination', 't_est', 'key_fit', 'error']


def _path_for(scenario: Scenario, parameter: str) -> tuple:
    if parameter in ('p', 'gamma'):
        return ('boundary', parameter)
    if parameter == 'l':
        return ('domain', 'l')
    if parameter == 'n':
        return ('domain', 'nx' if scenario.solver == 'cylinder2d' else 'n')
    return ('solver_config', 'dt_init')


def variant(scenario: Scenario, parameter: str, value: float) -> Scenario:
    """Copy of the scenario with one sweepable parameter replaced."""
    if parameter not in SWEEPABLE:
        raise ScenarioError(f'{parameter!r} is not sweepable; choose one of {", ".join(SWEEPABLE)}')
    data = scenario.model_dump(mode='json')
    section, key = _path_for(scenario, parameter)
    data[section][key] = int(value) if parameter == 'n' else value
    data['name'] = f'{scenario.name}_{parameter}_{value:g}'
    try:
        return Scenario.model_validate(data)
    except ValueError as exc:
        raise ScenarioError(f'{parameter}={value:g} gives an invalid scenario: {exc}')


def _run_one(data: dict, output_dir: str) -> dict:
    scenario = Scenario.model_validate(data)
    try:
        result = run_scenario(scenario, output_dir)
    except Exception as exc:
        logger.error('Sweep member %s failed: %s', scenario.name, exc)
        return {'name': scenario.name, 'error': f'{type(exc).__name__}: {exc}'}
    summary = result.summary
    fits = [f['parameter'] for f in summary.fits.values() if isinstance(f, dict) and 'parameter' in f]
    return {
        'name': scenario.name,
        'termination': summary.termination,
        't_est': summary.t_est,
        'key_fit': fits[0] if fits else NOT_APPLICABLE,
        'error': '',
    }


def sweep(scenario: Scenario, parameter: str, values: Sequence[float],
          output_dir: Optional[str] = None, workers: Optional[int] = None) -> List[dict]:
    """Run one variant per value, concurrently when workers > 1.

    A failing member is recorded and the sweep continues. Writes
    <name>.sweep_<parameter>.csv next to the member outputs.
    """
    output_dir = str(output_dir or get_config().OUTPUT_DIR)
    workers = workers or get_config().SWEEP_WORKERS
    variants = [variant(scenario, parameter, v) for v in values]
    payloads = [v.model_dump(mode='json') for v in variants]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_one, data, output_dir) for data in payloads]
            outcomes = []
            for future in futures:
                try:
                    outcomes.append(future.result())
                except Exception as exc:
                    outcomes.append({'error': f'{type(exc).__name__}: {exc}'})
    else:
        outcomes = [_run_one(data, output_dir) for data in payloads]

    table = []
    for value, member, outcome in zip(values, variants, outcomes):
        row = {column: NOT_APPLICABLE for column in SWEEP_COLUMNS}
        row.update({'value': value, 'name': member.name})
        row.update(outcome)
        table.append(row)

    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=SWEEP_COLUMNS, lineterminator='\n')
    writer.writeheader()
    for row in table:
        writer.writerow({k: ('%.17g' % v if isinstance(v, float) else v) for k, v in row.items()})
    path = Path(output_dir) / f'{output_stem(scenario.name)}.sweep_{parameter}.csv'
    atomic_write(path, buffer.getvalue())
    logger.info('Sweep over %s finished: %d runs, %d failed', parameter, len(table),
                sum(1 for r in table if r['error']))
    return table
