"""Initial-data and boundary presets turned into solver inputs."""

from __future__ import annotations
from dataclasses import dataclass
import logging
import math
from typing import Any, List, Optional

import numpy as np

from ..core.compatibility import default_blend_width, make_compatible_initial_data
from ..core.models import Interval1D, RobinBoundary, SolutionState
from ..cylinder.grid import BoundaryCurvature, CylinderGrid
from ..cylinder.solver2d import make_compatible_2d
from ..disc.radial import CurvatureBoundary, RadialGrid, hemisphere_oracle, make_compatible_radial
from ..errors import ScenarioError
from ..geometry.profiles import conformal_interval, example_profile, profile_to_conformal
from ..solver.oracles import SechSquaredOracle
from .models import Scenario

logger = logging.getLogger(__name__)


@dataclass
class Setup:
    """Compatible initial state with the grid and boundary it lives on."""
    solver: str
    grid: Any
    boundary: Any
    state: SolutionState
    expected_T: Optional[float] = None


def output_times(scenario: Scenario) -> List[float]:
    spec = scenario.output_times
    if isinstance(spec, list):
        return sorted(spec)
    if spec.spacing == 'log':
        start = spec.start or scenario.t_final / 10.0**3
        return list(np.geomspace(start, scenario.t_final, spec.count))
    return list(np.linspace(0.0, scenario.t_final, spec.count + 1)[1:])


def _line1d(scenario: Scenario) -> Setup:
    b, i = scenario.boundary, scenario.initial
    n = scenario.domain.n
    expected_T = None

    if i.preset == 'example_metric':
        metric = example_profile()
        conformal = profile_to_conformal(metric, conformal_interval(metric, n))
        dom = conformal.domain
        gamma = conformal.gamma if b.gamma == 'auto' else b.gamma
        profile = conformal.state.u
    else:
        dom = Interval1D(scenario.domain.l, n)
        x = dom.x
        if i.preset == 'constant':
            gamma, profile = b.gamma, np.full(n, i.c)
        elif i.preset == 'sech2':
            oracle = SechSquaredOracle(i.c, i.T, dom.l)
            gamma = oracle.gamma if b.gamma == 'auto' else b.gamma
            profile = oracle.u(x)
            if b.p == 1.0 and math.isclose(gamma, oracle.gamma):
                expected_T = i.T
        elif i.preset == 'exp_quadratic':
            gamma = dom.l if b.gamma == 'auto' else b.gamma
            profile = np.exp(x**2 - dom.l**2)
        else:
            gamma, profile = b.gamma, _table(i.values, n)

    bc = RobinBoundary(gamma, b.p)
    blend = scenario.blend_width or default_blend_width(dom.l, dom.h)
    state = make_compatible_initial_data(profile, bc, dom, blend)
    return Setup('line1d', dom, bc, state, expected_T)


def _disc(scenario: Scenario) -> Setup:
    b, i = scenario.boundary, scenario.initial
    grid = RadialGrid(scenario.domain.a, scenario.domain.n)
    if b.kind == 'curvature':
        bc = CurvatureBoundary(b.beta, grid.a)
    else:
        bc = RobinBoundary(b.gamma, b.p)
    expected_T = None
    if i.preset == 'constant':
        profile = np.full(grid.n, i.c)
    elif i.preset == 'hemisphere':
        profile = hemisphere_oracle(grid.r, 0.0, i.T)
        if b.kind == 'curvature' and b.beta == 0 and grid.a == 1:
            expected_T = i.T
    else:
        profile = _table(i.values, grid.n)
    blend = scenario.blend_width or default_blend_width(grid.a, grid.h)
    return Setup('disc', grid, bc, make_compatible_radial(profile, bc, grid, blend), expected_T)


def _cylinder(scenario: Scenario) -> Setup:
    b, i, d = scenario.boundary, scenario.initial, scenario.domain
    grid = CylinderGrid(d.l, d.nx, d.ntheta)
    if b.phi == 'constant':
        phi = BoundaryCurvature.constant(b.gamma)
    else:
        phi = BoundaryCurvature.modulated(b.mean, b.amplitude)
    blend = scenario.blend_width or default_blend_width(grid.l, grid.hx)
    state = make_compatible_2d(np.full(grid.shape, i.c), phi, grid, blend)
    return Setup('cylinder2d', grid, phi, state)


def _table(values, n: int) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.shape != (n,):
        raise ScenarioError(f'table preset has {values.size} values for {n} nodes')
    return values


_BUILDERS = {
    'line1d': _line1d,
    'disc': _disc,
    'cylinder2d': _cylinder,
}


def build_setup(scenario: Scenario) -> Setup:
    """Grid, boundary and compatible initial state for a validated scenario."""
    setup = _BUILDERS[scenario.solver](scenario)
    logger.debug('Built %s setup for %s', setup.solver, scenario.name)
    return setup


__all__ = ['Setup', 'build_setup', 'output_times']
