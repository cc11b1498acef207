"""Pytest configuration for tests."""

import os
import sys

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from logdiff.config import Config
from logdiff.core import Interval1D, RobinBoundary, SolverConfig, make_compatible_initial_data


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: long-running solver checks')


@pytest.fixture
def unit_interval():
    """Grid on [-1, 1] with 65 nodes."""
    return Interval1D(1.0, 65)


@pytest.fixture
def fast_config():
    """Solver settings for short test runs."""
    return SolverConfig(dt_init=1e-3, dt_max=1e-2)


@pytest.fixture
def compatible_constant():
    """Compatible state built from u = c under the given law."""
    def build(c, bc, dom, width=0.2):
        return make_compatible_initial_data(np.full(dom.n, c), bc, dom, width)
    return build


@pytest.fixture(autouse=True)
def output_dir(tmp_path, monkeypatch):
    """Keep every written file inside the test's temporary directory."""
    out = tmp_path / 'out'
    monkeypatch.setattr(Config, 'OUTPUT_DIR', str(out))
    return out
