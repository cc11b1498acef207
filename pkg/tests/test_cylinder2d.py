"""Tests for the cylinder solver and its 1D envelopes."""

import math

import numpy as np
import pytest
import scipy.sparse as sp
from scipy.linalg import solve_banded
from scipy.sparse.linalg import LinearOperator

from logdiff.core import RobinBoundary, SolutionState, SolverConfig, make_compatible_initial_data
from logdiff.cylinder import (
    BoundaryCurvature,
    CylinderGrid,
    apply_log_diffusion_2d,
    compatibility_residual_2d,
    integrate_cylinder,
    make_compatible_2d,
    run_cylinder,
    thomas_batched,
)
from logdiff.cylinder.linear import solve_preconditioned
from logdiff.errors import LinearSolveError, PreconditionError
from logdiff.solver import Termination, apply_log_diffusion, run


def _fixed_steps(dt):
    return SolverConfig(dt_init=dt, dt_max=dt, step_rel_change=1.0)


class TestCylinderGrid:
    """Tests for the cylinder grid and boundary curvature presets."""

    def test_shape_and_spacing(self):
        """Test axial and angular spacing."""
        grid = CylinderGrid(1.0, 17, 8)
        assert grid.shape == (17, 8)
        assert grid.hx == pytest.approx(0.125)
        assert grid.htheta == pytest.approx(math.pi / 4)
        assert grid.cell_weights.sum() == pytest.approx(4.0 * math.pi)

    def test_rejects_small_grids(self):
        """Test that too few angular nodes are refused."""
        with pytest.raises(PreconditionError):
            CylinderGrid(1.0, 17, 3)

    def test_modulated_extremes(self):
        """Test the range of 0.5 + 0.25 sin(theta) cos(t)."""
        grid = CylinderGrid(1.0, 17, 32)
        phi = BoundaryCurvature.modulated(0.5, 0.25)
        assert phi.extremes(grid.theta, 20.0) == pytest.approx((0.25, 0.75))

    def test_rotated(self):
        """Test that rotation shifts the angle."""
        phi = BoundaryCurvature.modulated(0.5, 0.25)
        theta = np.linspace(0.0, 2.0 * math.pi, 9)
        shifted = phi.rotated(0.3)
        assert np.allclose(shifted(1, theta, 0.0), phi(1, theta - 0.3, 0.0))

    def test_constant_broadcasts(self):
        """Test that a constant curvature fills every angle."""
        phi = BoundaryCurvature.constant(0.7)
        assert np.allclose(phi(-1, np.zeros(5), 3.0), 0.7)


class TestLinearAlgebra:
    """Tests for the batched tridiagonal solver and preconditioned GMRES."""

    def test_thomas_matches_banded_solver(self):
        """Test batched solves column by column against scipy."""
        rng = np.random.default_rng(7)
        n, m = 12, 4
        lower = rng.uniform(-1.0, 0.0, (n, m))
        upper = rng.uniform(-1.0, 0.0, (n, m))
        diag = 3.0 + rng.uniform(0.0, 1.0, (n, m))
        rhs = rng.normal(size=(n, m))
        x = thomas_batched(lower, diag, upper, rhs)
        for j in range(m):
            ab = np.zeros((3, n))
            ab[0, 1:] = upper[:-1, j]
            ab[1] = diag[:, j]
            ab[2, :-1] = lower[1:, j]
            assert np.allclose(x[:, j], solve_banded((1, 1), ab, rhs[:, j]))

    def test_unconverged_gmres_raises(self):
        """Test that GMRES stopping short of its tolerance is an error."""
        n = 4000
        shift = sp.diags([np.ones(n - 1)], [-1], format='lil')
        shift[0, n - 1] = 1.0
        rhs = np.zeros(n)
        rhs[0] = 1.0
        identity = LinearOperator((n, n), matvec=lambda v: v, dtype=float)
        with pytest.raises(LinearSolveError, match='GMRES'):
            solve_preconditioned(shift.tocsr(), rhs, identity, 1e-10)


class TestReduction:
    """Tests that angle-independent problems reduce to the interval solver."""

    def test_operator_matches_interval(self):
        """Test the 2D operator on angle-independent data."""
        grid = CylinderGrid(1.0, 33, 8)
        w = np.log(1.0 + 0.5 * np.cos(grid.x))
        field1 = apply_log_diffusion(SolutionState(0.0, w), RobinBoundary(0.7, 1.5), grid.axis)
        state2 = SolutionState(0.0, np.repeat(w[:, None], grid.ntheta, axis=1))
        field2 = apply_log_diffusion_2d(state2, BoundaryCurvature.constant(0.7), grid, 0.0)
        assert np.allclose(field2, field1[:, None], atol=1e-9)

    def test_compatible_data_matches_interval(self):
        """Test that the 2D collar correction equals the 1D one on every line."""
        grid = CylinderGrid(1.0, 33, 8)
        state1 = make_compatible_initial_data(np.ones(grid.nx), RobinBoundary(0.5, 1.5), grid.axis, 0.25)
        state2 = make_compatible_2d(np.ones(grid.shape), BoundaryCurvature.constant(0.5), grid, 0.25)
        assert np.allclose(state2.w, state1.w[:, None])
        lower, upper = compatibility_residual_2d(state2, BoundaryCurvature.constant(0.5), grid)
        assert np.max(np.abs(lower)) < 1e-8
        assert np.max(np.abs(upper)) < 1e-8

    def test_run_matches_interval(self):
        """Test that a constant-curvature 2D run tracks the 1D run."""
        grid = CylinderGrid(1.0, 33, 8)
        phi = BoundaryCurvature.constant(0.5)
        bc = RobinBoundary(0.5, 1.5)
        cfg = _fixed_steps(0.02)
        state1 = make_compatible_initial_data(np.ones(grid.nx), bc, grid.axis, 0.25)
        state2 = make_compatible_2d(np.ones(grid.shape), phi, grid, 0.25)
        traj1 = run(state1, bc, grid.axis, cfg, 0.4, [0.2])
        traj2 = integrate_cylinder(state2, phi, grid, cfg, 0.4, [0.2])
        assert traj2.termination is Termination.REACHED_T_FINAL
        assert np.allclose(traj2.samples[-1].u, traj1.samples[-1].u[:, None], rtol=1e-6)
        _, m1 = traj1.series('mass')
        _, m2 = traj2.series('mass')
        assert np.allclose(m2, m1, rtol=1e-6)


class TestRotation:
    """Tests for the angular symmetry of the cylinder problem."""

    def test_rotation_commutes_with_run(self):
        """Test that rotating data and curvature by three cells rotates the solution."""
        grid = CylinderGrid(1.0, 17, 8)
        phi = BoundaryCurvature.modulated(0.5, 0.25)
        shifted_phi = phi.rotated(3 * grid.htheta)
        profile = np.repeat((1.0 + 0.2 * np.cos(grid.theta))[None, :], grid.nx, axis=0)
        cfg = _fixed_steps(0.02)
        state = make_compatible_2d(profile, phi, grid, 0.25)
        shifted = make_compatible_2d(np.roll(profile, 3, axis=1), shifted_phi, grid, 0.25)
        assert np.allclose(shifted.w, np.roll(state.w, 3, axis=1))
        traj = integrate_cylinder(state, phi, grid, cfg, 0.2, [0.1])
        traj_shifted = integrate_cylinder(shifted, shifted_phi, grid, cfg, 0.2, [0.1])
        assert traj_shifted.termination is Termination.REACHED_T_FINAL
        for sample, sample_shifted in zip(traj.samples, traj_shifted.samples):
            assert np.allclose(sample_shifted.u, np.roll(sample.u, 3, axis=1), rtol=1e-6)
        _, m = traj.series('mass')
        _, m_shifted = traj_shifted.series('mass')
        assert np.allclose(m_shifted, m, rtol=1e-6)


class TestCylinderRun:
    """Tests for runs with angle-dependent curvature."""

    @pytest.fixture(scope='class')
    def modulated_run(self):
        """Short run under 0.5 + 0.25 sin(theta) cos(t) with envelopes."""
        grid = CylinderGrid(1.0, 33, 16)
        phi = BoundaryCurvature.modulated(0.5, 0.25)
        state = make_compatible_2d(np.ones(grid.shape), phi, grid, 0.25)
        times = list(np.linspace(0.25, 2.0, 8))
        return run_cylinder(state, phi, grid, SolverConfig(dt_max=0.05), 2.0, times)

    def test_reaches_final_time(self, modulated_run):
        """Test that the modulated run has no finite-time event."""
        assert modulated_run.termination is Termination.REACHED_T_FINAL

    def test_envelope_containment(self, modulated_run):
        """Test that the 2D solution stays between its 1D envelopes."""
        report = modulated_run.extras['envelope']
        assert report.gamma_upper == pytest.approx(0.75)
        assert report.gamma_lower == pytest.approx(0.25)
        assert len(report.rows) == 9
        assert report.contained

    def test_gauss_bonnet_identity(self, modulated_run):
        """Test the cylinder Gauss-Bonnet residual stays at round-off."""
        _, gb = modulated_run.series('gb_residual')
        _, rate = modulated_run.series('area_rate')
        assert np.all(np.abs(gb) <= 1e-9 * (1.0 + np.abs(rate)))

    def test_angular_structure_develops(self, modulated_run):
        """Test that the angle-dependent law makes u vary in theta."""
        _, spread = modulated_run.series('theta_spread')
        assert spread[0] > 0
        assert spread[-1] > 0

    def test_incompatible_data_refused(self):
        """Test that uncorrected data is refused."""
        grid = CylinderGrid(1.0, 17, 8)
        state = SolutionState.from_u(0.0, np.ones(grid.shape))
        with pytest.raises(PreconditionError):
            integrate_cylinder(state, BoundaryCurvature.constant(0.5), grid, SolverConfig(), 1.0)
