"""Tests for the radially symmetric disc solver."""

import math

import numpy as np
import pytest

from logdiff.analysis import mass_law_residual
from logdiff.core import RobinBoundary, SolutionState, SolverConfig
from logdiff.disc import (
    CurvatureBoundary,
    RadialGrid,
    apply_radial_log_diffusion,
    hemisphere_oracle,
    make_compatible_radial,
    radial_compatibility_residual,
    run_disc,
)
from logdiff.errors import PreconditionError
from logdiff.solver import Termination


@pytest.fixture(scope='module')
def hemisphere_run():
    """Shrinking hemisphere on the unit disc with T = 1."""
    grid = RadialGrid(1.0, 129)
    bcd = CurvatureBoundary(0.0, 1.0)
    state = make_compatible_radial(hemisphere_oracle(grid.r, 0.0, 1.0), bcd, grid, 0.2)
    return run_disc(state, bcd, grid, SolverConfig(dt_max=1e-2), 1.5)


class TestRadialGrid:
    """Tests for the radial control volumes."""

    def test_volumes_cover_the_disc(self):
        """Test that control volumes sum to a^2 / 2."""
        grid = RadialGrid(1.5, 37)
        assert grid.volumes.sum() == pytest.approx(0.5 * 1.5**2)

    def test_nodes(self):
        """Test that nodes run from the origin to the rim."""
        grid = RadialGrid(2.0, 5)
        assert np.allclose(grid.r, [0.0, 0.5, 1.0, 1.5, 2.0])
        assert grid.refine().h == pytest.approx(0.25)

    def test_rejects_bad_radius(self):
        """Test that a non-positive radius is refused."""
        with pytest.raises(PreconditionError):
            RadialGrid(-1.0, 9)


class TestRadialOperator:
    """Tests for the finite-volume radial log-Laplacian."""

    def test_exact_for_r_squared(self):
        """Test that w = r^2 has Laplacian 4 at every node, origin and rim included."""
        grid = RadialGrid(1.0, 17)
        state = SolutionState(0.0, grid.r**2)
        lap = apply_radial_log_diffusion(state, RobinBoundary(1.0, 1.0), grid)
        assert np.allclose(lap, 4.0)

    def test_curvature_boundary_slope(self):
        """Test d_r log u = 2 beta sqrt(u) - 2/a at u = 1."""
        g, dg = CurvatureBoundary(0.5, 2.0).log_slope(0.0)
        assert g == pytest.approx(0.0)
        assert dg == pytest.approx(0.5)

    def test_hemisphere_is_nearly_compatible(self):
        """Test that the hemisphere meets the flat-rim law to O(h^2)."""
        grid = RadialGrid(1.0, 65)
        state = SolutionState.from_u(0.0, hemisphere_oracle(grid.r, 0.0, 1.0))
        residual = radial_compatibility_residual(state, CurvatureBoundary(0.0, 1.0), grid)
        assert abs(residual) < 10 * grid.h**2

    def test_correction_reaches_tolerance(self):
        """Test that the rim collar makes constant data compatible."""
        grid = RadialGrid(1.0, 65)
        bcd = CurvatureBoundary(1.0, 1.0)
        state = make_compatible_radial(np.full(grid.n, 2.0), bcd, grid, 0.2)
        assert abs(radial_compatibility_residual(state, bcd, grid)) < 1e-8
        assert state.u[0] == pytest.approx(2.0)


class TestDiscRun:
    """Tests for complete disc runs."""

    def test_incompatible_data_refused(self):
        """Test that u = 1 under a flat rim law is refused."""
        grid = RadialGrid(1.0, 33)
        state = SolutionState.from_u(0.0, np.ones(grid.n))
        with pytest.raises(PreconditionError):
            run_disc(state, CurvatureBoundary(0.0, 1.0), grid, SolverConfig(), 1.0)

    def test_hemisphere_vanishes_at_T(self, hemisphere_run):
        """Test that the hemisphere blows down at T = 1."""
        assert hemisphere_run.termination is Termination.BLOW_DOWN
        assert hemisphere_run.t_est == pytest.approx(1.0, rel=0.02)

    def test_hemisphere_min_is_linear(self, hemisphere_run):
        """Test u_min / (T - t) close to 2 over the first nine tenths of the run."""
        t, u_min = hemisphere_run.series('u_min')
        mask = t <= 0.9
        assert np.allclose(u_min[mask] / (1.0 - t[mask]), 2.0, rtol=0.05)

    def test_area_falls_at_four_pi(self, hemisphere_run):
        """Test dA/dt = -4 pi for the flat rim."""
        t, A = hemisphere_run.series('area')
        assert np.allclose(A - A[0], -4.0 * math.pi * t, atol=1e-6)

    def test_gauss_bonnet_identity(self, hemisphere_run):
        """Test the disc Gauss-Bonnet residual stays at round-off."""
        _, gb = hemisphere_run.series('gb_residual')
        assert np.max(np.abs(gb)) < 1e-8

    def test_mass_law(self, hemisphere_run):
        """Test dm/dt = 2 pi a d_r log u(a) step by step."""
        _, residual = mass_law_residual(hemisphere_run)
        assert np.max(np.abs(residual)) < 1e-5

    def test_boundary_column(self, hemisphere_run):
        """Test that disc rows carry the rim value of u."""
        _, u_b = hemisphere_run.series('u_boundary')
        _, u_min = hemisphere_run.series('u_min')
        assert np.allclose(u_b, u_min)
