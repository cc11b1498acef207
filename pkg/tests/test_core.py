"""Tests for grids, boundary laws, stencils and compatible initial data."""

import numpy as np
import pytest

from logdiff.core import (
    LOG_LAPLACIAN,
    Interval1D,
    RobinBoundary,
    SolutionState,
    SolverConfig,
    blend_to_slopes,
    compatibility_residual,
    default_blend_width,
    make_compatible_initial_data,
    outward_slopes,
)
from logdiff.core.stencils import smoothstep
from logdiff.errors import PreconditionError


class TestInterval1D:
    """Tests for the uniform interval grid."""

    def test_nodes_and_spacing(self):
        """Test that nodes span [-l, l] with spacing 2l/(n-1)."""
        dom = Interval1D(2.0, 9)
        assert dom.h == pytest.approx(0.5)
        assert dom.x[0] == -2.0
        assert dom.x[-1] == 2.0
        assert np.allclose(np.diff(dom.x), 0.5)

    def test_weights_integrate_constants(self):
        """Test that trapezoid weights sum to the interval length."""
        dom = Interval1D(1.5, 31)
        assert dom.weights.sum() == pytest.approx(3.0)

    def test_refine_halves_spacing(self):
        """Test that refinement splits every cell."""
        dom = Interval1D(1.0, 33)
        fine = dom.refine()
        assert fine.n == 65
        assert fine.h == pytest.approx(0.5 * dom.h)
        assert np.allclose(fine.x[::2], dom.x)

    def test_rejects_bad_grids(self):
        """Test that too few nodes or a non-positive length are refused."""
        with pytest.raises(PreconditionError):
            Interval1D(1.0, 2)
        with pytest.raises(PreconditionError):
            Interval1D(0.0, 10)

    def test_dict_round_trip(self):
        """Test Interval1D serialization."""
        dom = Interval1D(0.75, 17)
        assert Interval1D.from_dict(dom.to_dict()) == dom


class TestRobinBoundary:
    """Tests for the boundary law du/dn = 2 gamma u^p."""

    def test_log_slope_at_unit_value(self):
        """Test the outward log slope and its derivative at u = 1."""
        g, dg = RobinBoundary(1.0, 1.5).log_slope(0.0)
        assert g == pytest.approx(2.0)
        assert dg == pytest.approx(1.0)

    def test_log_slope_scales_with_u(self):
        """Test g = 2 gamma u^(p-1) for u = 4."""
        g, _ = RobinBoundary(-0.5, 2.0).log_slope(np.log(4.0))
        assert g == pytest.approx(-4.0)

    def test_geodesic_curvature_for_three_halves(self):
        """Test that p = 3/2 makes gamma the geodesic curvature."""
        bc = RobinBoundary(0.3, 1.5)
        assert bc.geodesic_curvature(7.0) == pytest.approx(0.3)

    def test_rejects_non_finite(self):
        """Test that NaN parameters are refused."""
        with pytest.raises(PreconditionError):
            RobinBoundary(float('nan'), 1.0)


class TestSolutionState:
    """Tests for the immutable log-state."""

    def test_from_u_stores_log(self):
        """Test that from_u stores w = log u."""
        state = SolutionState.from_u(0.5, [1.0, np.e])
        assert np.allclose(state.w, [0.0, 1.0])
        assert np.allclose(state.u, [1.0, np.e])
        assert state.t == 0.5

    def test_values_are_read_only(self):
        """Test that node values cannot be modified in place."""
        state = SolutionState.from_u(0.0, np.ones(5))
        with pytest.raises(ValueError):
            state.w[0] = 1.0

    def test_rejects_non_positive_u(self):
        """Test that u must be strictly positive."""
        with pytest.raises(PreconditionError):
            SolutionState.from_u(0.0, [1.0, 0.0, 1.0])

    def test_rejects_non_finite_w(self):
        """Test that infinite log values are refused."""
        with pytest.raises(PreconditionError):
            SolutionState(0.0, np.array([0.0, np.inf]))


class TestSolverConfig:
    """Tests for solver settings."""

    def test_defaults_come_from_config(self):
        """Test the default step bounds and thresholds."""
        cfg = SolverConfig()
        assert cfg.dt_init == 1e-4
        assert cfg.dt_max == 5e-2
        assert cfg.blow_up_threshold == 1e10
        assert cfg.dt_growth == 1.2

    def test_from_dict_rejects_unknown_keys(self):
        """Test that misspelled settings are caught."""
        with pytest.raises(PreconditionError, match='dt_maximum'):
            SolverConfig.from_dict({'dt_maximum': 1.0})

    def test_rejects_inconsistent_steps(self):
        """Test that dt_init above dt_max is refused."""
        with pytest.raises(PreconditionError):
            SolverConfig(dt_init=1.0, dt_max=0.1)

    def test_with_overrides(self):
        """Test that overrides keep the other settings."""
        cfg = SolverConfig().with_overrides(dt_max=0.5)
        assert cfg.dt_max == 0.5
        assert cfg.newton_tol == SolverConfig().newton_tol


class TestStencils:
    """Tests for the ghost-node log-Laplacian."""

    def test_interior_rows_are_second_differences(self):
        """Test that x^2 has second difference 2 at interior nodes."""
        dom = Interval1D(1.0, 21)
        lap = LOG_LAPLACIAN.apply(dom.x**2, dom.h, 2.0, 2.0)
        assert np.allclose(lap[1:-1], 2.0)

    def test_boundary_rows_exact_for_quadratics(self):
        """Test that exact outward slopes make the boundary rows exact too."""
        dom = Interval1D(1.0, 21)
        lap = LOG_LAPLACIAN.apply(dom.x**2, dom.h, 2.0, 2.0)
        assert lap[0] == pytest.approx(2.0)
        assert lap[-1] == pytest.approx(2.0)

    def test_weighted_sum_telescopes_to_fluxes(self):
        """Test that the trapezoid-weighted operator sums to the boundary slopes."""
        dom = Interval1D(1.0, 41)
        w = np.sin(3.0 * dom.x) + 0.2 * dom.x
        lap = LOG_LAPLACIAN.apply(w, dom.h, 0.7, -1.3)
        assert np.dot(dom.weights, lap) == pytest.approx(0.7 - 1.3, abs=1e-10)

    def test_bands_match_dense_jacobian(self):
        """Test the banded Jacobian against columns of the linear operator."""
        n, h = 7, 0.25
        ab = LOG_LAPLACIAN.bands(n, h, 0.0, 0.0)
        dense = np.column_stack([LOG_LAPLACIAN.apply(e, h, 0.0, 0.0) for e in np.eye(n)])
        for j in range(n):
            for i in range(max(0, j - 1), min(n, j + 2)):
                assert ab[1 + i - j, j] == pytest.approx(dense[i, j])

    def test_outward_slopes_sign(self):
        """Test that w = x has outward slope -1 at -l and +1 at +l."""
        dom = Interval1D(1.0, 11)
        lower, upper = outward_slopes(dom.x, dom.h)
        assert lower == pytest.approx(-1.0)
        assert upper == pytest.approx(1.0)

    def test_smoothstep_limits(self):
        """Test that smoothstep runs from 0 to 1 monotonically."""
        r = np.linspace(-0.5, 1.5, 201)
        s = smoothstep(r)
        assert s[0] == 0.0
        assert s[-1] == 1.0
        assert np.all(np.diff(s) >= 0)

    def test_blend_works_on_columns(self):
        """Test that slope targets per column are met on a 2D array."""
        h = 0.1
        w = np.zeros((21, 3))
        targets = np.array([0.5, -1.0, 2.0])
        blended = blend_to_slopes(w, h, 0.5, lower=targets, upper=targets)
        lower, upper = outward_slopes(blended, h)
        assert np.allclose(lower, targets)
        assert np.allclose(upper, targets)


class TestCompatibility:
    """Tests for compatibility residuals and the collar correction."""

    def test_constant_data_residual(self):
        """Test the residual of u = 1 under gamma = 1, p = 3/2."""
        dom = Interval1D(1.0, 33)
        state = SolutionState.from_u(0.0, np.ones(dom.n))
        residual = compatibility_residual(state, RobinBoundary(1.0, 1.5), dom)
        assert residual == pytest.approx((-2.0, -2.0))

    def test_zero_flux_constant_is_compatible(self):
        """Test that u = c is compatible when gamma = 0."""
        dom = Interval1D(1.0, 33)
        state = SolutionState.from_u(0.0, np.full(dom.n, 3.0))
        residual = compatibility_residual(state, RobinBoundary(0.0, 2.0), dom)
        assert residual == pytest.approx((0.0, 0.0))

    @pytest.mark.parametrize('gamma,p', [(1.0, 1.5), (-2.0, 0.5), (0.5, 3.0), (-1.0, 1.0)])
    def test_correction_removes_residual(self, gamma, p):
        """Test that corrected data satisfies the law to round-off."""
        dom = Interval1D(1.0, 65)
        bc = RobinBoundary(gamma, p)
        state = make_compatible_initial_data(np.ones(dom.n), bc, dom, 0.3)
        assert max(map(abs, compatibility_residual(state, bc, dom))) < 1e-8

    def test_correction_leaves_middle_untouched(self):
        """Test that nodes beyond the collar keep their values."""
        dom = Interval1D(1.0, 65)
        profile = 1.0 + 0.1 * np.cos(dom.x)
        state = make_compatible_initial_data(profile, RobinBoundary(1.0, 1.5), dom, 0.25)
        middle = np.abs(dom.x) < 1.0 - 0.25
        assert np.allclose(state.u[middle], profile[middle])
        assert state.u[0] == pytest.approx(profile[0])
        assert state.u[-1] == pytest.approx(profile[-1])

    def test_collar_too_wide(self):
        """Test that overlapping collars are refused."""
        dom = Interval1D(1.0, 33)
        with pytest.raises(PreconditionError):
            make_compatible_initial_data(np.ones(dom.n), RobinBoundary(1.0, 1.5), dom, 1.0)

    def test_collar_too_narrow(self):
        """Test that a collar below two cells is refused."""
        dom = Interval1D(1.0, 33)
        with pytest.raises(PreconditionError):
            make_compatible_initial_data(np.ones(dom.n), RobinBoundary(1.0, 1.5), dom, dom.h)

    def test_default_width_inside_limits(self):
        """Test that the default collar satisfies its own constraints."""
        dom = Interval1D(1.0, 9)
        width = default_blend_width(dom.l, dom.h)
        assert 2 * dom.h <= width < dom.l
