"""Tests for rate fits, mass bounds, moments, comparison runs and monitors."""

from dataclasses import fields

import numpy as np
import pytest

from logdiff.analysis import (
    MomentSeries,
    RateModel,
    area_convexity_slack,
    check_mass_bound_blowdown,
    check_mass_bound_blowup,
    comparison_harness,
    curvature_envelope_slack,
    decay_floor,
    default_window,
    fit_rate,
    flatness_ratio,
    gauss_bonnet_relative_residual,
    growth_ceiling,
    mass_bound_blowdown_slack,
    mass_bound_blowup_slack,
    mass_law_relative_residual,
    moment_inequality_slack,
    moment_series,
    sign_preservation,
)
from logdiff.core import Interval1D, RobinBoundary, SolutionState, SolverConfig, make_compatible_initial_data
from logdiff.errors import InsufficientPointsError, NonPositiveValuesError, PreconditionError
from logdiff.solver import DiagnosticRow, Termination, Trajectory, run


def _trajectory(t, **columns):
    """Trajectory with the given diagnostic columns and zeros elsewhere."""
    names = [f.name for f in fields(DiagnosticRow) if f.name not in ('t', 'extra')]
    rows = []
    for i, ti in enumerate(t):
        values = {name: 0.0 for name in names}
        values['newton_iters'] = 1
        values.update({name: float(series[i]) for name, series in columns.items()})
        rows.append(DiagnosticRow(t=float(ti), **values))
    return Trajectory(
        solver='line1d',
        domain=Interval1D(1.0, 9).to_dict(),
        boundary={},
        exponent=None,
        initial=rows[0],
        rows=rows[1:],
        samples=[],
        termination=Termination.REACHED_T_FINAL,
    )


@pytest.fixture(scope='module')
def blowup_run():
    """p = 3, gamma = 1 from corrected u = 1 on [-1, 1]."""
    dom = Interval1D(1.0, 65)
    bc = RobinBoundary(1.0, 3.0)
    state = make_compatible_initial_data(np.ones(dom.n), bc, dom, 0.2)
    return run(state, bc, dom, SolverConfig(dt_max=1e-2), 5.0), bc, dom


class TestRateFits:
    """Tests for the four asymptotic fit models."""

    def test_default_window_is_last_half_in_log_time(self):
        """Test that t in [0, 100] sampled at integers gives the window (10, 100)."""
        lo, hi = default_window(np.linspace(0.0, 100.0, 101))
        assert lo == pytest.approx(10.0)
        assert hi == pytest.approx(100.0)

    def test_power_law(self):
        """Test alpha recovered from t^1.5."""
        t = np.linspace(1.0, 50.0, 200)
        fit = fit_rate(t, 3.0 * t**1.5, 'power')
        assert fit.model is RateModel.POWER
        assert fit.parameter == pytest.approx(1.5)
        assert fit.rms_residual < 1e-10

    def test_exponential(self):
        """Test lambda recovered from exp(0.7 t)."""
        t = np.linspace(0.0, 10.0, 101)
        fit = fit_rate(t, 2.0 * np.exp(0.7 * t), RateModel.EXPONENTIAL, (1.0, 10.0))
        assert fit.parameters['lambda'] == pytest.approx(0.7)

    def test_gaussian_log(self):
        """Test D recovered from exp(-0.3 t^2)."""
        t = np.linspace(0.0, 5.0, 51)
        fit = fit_rate(t, np.exp(-0.3 * t**2), 'gaussian_log', (1.0, 5.0))
        assert fit.parameter == pytest.approx(0.3)

    def test_linear_vanishing(self):
        """Test C and T recovered from 2 (3 - t)."""
        t = np.linspace(0.0, 2.9, 30)
        fit = fit_rate(t, 2.0 * (3.0 - t), 'linear_vanishing', (0.0, 2.9))
        assert fit.parameters['C'] == pytest.approx(2.0)
        assert fit.parameters['T'] == pytest.approx(3.0)

    def test_too_few_points(self):
        """Test that a window with fewer than eight points is refused."""
        t = np.linspace(1.0, 2.0, 5)
        with pytest.raises(InsufficientPointsError):
            fit_rate(t, t, 'power', (1.0, 2.0))

    def test_non_positive_values(self):
        """Test that logarithmic models refuse zero values."""
        t = np.linspace(1.0, 2.0, 10)
        values = np.ones_like(t)
        values[4] = 0.0
        with pytest.raises(NonPositiveValuesError):
            fit_rate(t, values, 'exponential', (1.0, 2.0))

    def test_unknown_model(self):
        """Test that a misspelled model name is refused."""
        with pytest.raises(ValueError):
            fit_rate(np.ones(10), np.ones(10), 'powerlaw')


class TestMassBounds:
    """Tests for the blow-down and blow-up mass bounds."""

    def test_blowdown_deadline(self):
        """Test the deadline 2/3 for p = 1/2, gamma = -1, m(0) = 2 on [-1, 1]."""
        slack, deadline = mass_bound_blowdown_slack([0.0, 0.1], [2.0, 1.5], RobinBoundary(-1.0, 0.5), 1.0)
        assert deadline == pytest.approx(2.0 / 3.0)
        assert slack[0] == pytest.approx(0.0)

    def test_blowup_deadline(self):
        """Test the deadline 1 for p = 3, gamma = 1, m(0) = 2 on [-1, 1]."""
        t = np.array([0.0, 0.5, 1.0, 1.5])
        times, slack, deadline = mass_bound_blowup_slack(t, [2.0, 3.0, 4.0, 5.0], RobinBoundary(1.0, 3.0), 1.0)
        assert deadline == pytest.approx(1.0)
        assert np.allclose(times, [0.0, 0.5])
        assert slack[0] == pytest.approx(0.0)

    def test_blowup_run_respects_bound(self, blowup_run):
        """Test that a blow-up run keeps the mass above its lower bound."""
        traj, bc, dom = blowup_run
        check = check_mass_bound_blowup(traj, bc, dom)
        assert check.applicable
        assert check.worst_slack >= -1e-8
        assert check.within_deadline
        assert check.to_dict()['deadline'] == pytest.approx(check.deadline)

    def test_blowdown_not_applicable_outside_regime(self):
        """Test that p >= 1 is reported as not applicable."""
        check = check_mass_bound_blowdown(None, RobinBoundary(-1.0, 1.5), Interval1D(1.0, 9))
        assert not check.applicable
        assert check.worst_slack is None
        assert check.within_deadline is None

    def test_blowup_not_applicable_outside_regime(self):
        """Test that gamma <= 0 is reported as not applicable."""
        check = check_mass_bound_blowup(None, RobinBoundary(-1.0, 3.0), Interval1D(1.0, 9))
        assert not check.applicable
        assert 'gamma' in check.reason


class TestMoments:
    """Tests for the moment functionals."""

    def test_constant_moments(self, unit_interval, fast_config):
        """Test r_2 = 2 l c^2 and q_1 = 2 l / c for u = 3."""
        state = SolutionState.from_u(0.0, np.full(unit_interval.n, 3.0))
        traj = run(state, RobinBoundary(0.0, 1.5), unit_interval, fast_config, 0.1, [0.05])
        assert np.allclose(moment_series(traj, 2, 'r').values, 18.0)
        assert np.allclose(moment_series(traj, 1, 'q').values, 2.0 / 3.0)

    def test_r_inequality_for_zero_flux(self, unit_interval, fast_config):
        """Test that the r inequality holds with equality when nothing moves."""
        bc = RobinBoundary(0.0, 1.5)
        state = SolutionState.from_u(0.0, np.full(unit_interval.n, 3.0))
        traj = run(state, bc, unit_interval, fast_config, 0.1, [0.05])
        slack = moment_inequality_slack(moment_series(traj, 2, 'r'), bc, unit_interval)
        assert slack.applicable
        assert slack.worst == pytest.approx(0.0, abs=1e-9)

    def test_mass_moment_tracks_collapsing_boundary(self, unit_interval, fast_config):
        """Test that r_1 meets its bound with equality while the boundary value falls."""
        bc = RobinBoundary(-1.0, 0.5)
        state = make_compatible_initial_data(np.ones(unit_interval.n), bc, unit_interval, 0.2)
        traj = run(state, bc, unit_interval, fast_config, 0.08, [0.02, 0.04, 0.06])
        series = moment_series(traj, 1, 'r')
        assert series.step_boundary.shape == (len(traj.rows), 2)
        slack = moment_inequality_slack(series, bc, unit_interval)
        assert slack.applicable
        assert np.max(np.abs(slack.slack)) < 1e-4

    def test_r_inequality_between_output_times(self):
        """Test the trapezoid bound when no per-step boundary values exist."""
        series = MomentSeries(
            n=1,
            kind='r',
            times=np.array([0.0, 1.0]),
            values=np.array([2.0, 1.0]),
            boundary_values=np.array([[4.0, 4.0], [1.0, 1.0]]),
        )
        slack = moment_inequality_slack(series, RobinBoundary(-0.25, 0.5), Interval1D(1.0, 9))
        # the bound averages -0.5 and -1.0; the rate is -1
        assert slack.worst == pytest.approx(0.25)

    def test_q_inequality_not_applicable(self, unit_interval, fast_config):
        """Test that q moments need p > 2 and gamma < 0."""
        bc = RobinBoundary(0.0, 1.5)
        state = SolutionState.from_u(0.0, np.ones(unit_interval.n))
        traj = run(state, bc, unit_interval, fast_config, 0.1, [0.05])
        slack = moment_inequality_slack(moment_series(traj, 1, 'q'), bc, unit_interval)
        assert not slack.applicable
        assert np.isnan(slack.worst)

    def test_bad_order_refused(self, unit_interval, fast_config):
        """Test that orders below one are refused."""
        state = SolutionState.from_u(0.0, np.ones(unit_interval.n))
        traj = run(state, RobinBoundary(0.0, 1.5), unit_interval, fast_config, 0.05)
        with pytest.raises(PreconditionError):
            moment_series(traj, 0.5, 'r')


class TestComparison:
    """Tests for the comparison harness."""

    def test_ordered_pair_stays_ordered(self, unit_interval, fast_config, compatible_constant):
        """Test that u = 1 below v = 1.5 under the same law stay ordered."""
        bc = RobinBoundary(0.5, 1.5)
        low = compatible_constant(1.0, bc, unit_interval)
        high = compatible_constant(1.5, bc, unit_interval)
        report = comparison_harness(low, high, bc, bc, unit_interval, fast_config, 0.5)
        assert report.valid
        assert report.flux_ordered
        assert report.ordered
        assert report.min_gap > 0
        assert report.common_times == 21

    @pytest.mark.slow
    @pytest.mark.parametrize('gamma,p', [(0.5, 1.5), (1.0, 1.0), (1.0, 3.0), (-1.0, 2.0), (-1.0, 3.0)])
    def test_pairs_across_regimes(self, unit_interval, fast_config, compatible_constant, gamma, p):
        """Test ordering of u = 1 below v = 1.5 across growth and decay laws."""
        bc = RobinBoundary(gamma, p)
        low = compatible_constant(1.0, bc, unit_interval, 0.1)
        high = compatible_constant(1.5, bc, unit_interval, 0.1)
        report = comparison_harness(low, high, bc, bc, unit_interval, fast_config, 0.3)
        assert report.valid
        assert report.common_times > 0
        assert report.ordered
        assert report.first_violation is None
        assert report.min_gap > 0

    def test_equal_data_is_degenerate(self, unit_interval, fast_config):
        """Test that data without a strict gap yields an invalid report."""
        state = SolutionState.from_u(0.0, np.ones(unit_interval.n))
        bc = RobinBoundary(0.0, 1.5)
        report = comparison_harness(state, state, bc, bc, unit_interval, fast_config, 0.5)
        assert not report.valid
        assert report.ordered is None
        assert report.to_dict()['common_times'] == 0


class TestMonitors:
    """Tests for the trajectory monitors."""

    def test_sign_preserved(self):
        """Test a positive curvature sign that persists."""
        t = np.linspace(0.0, 1.0, 5)
        report = sign_preservation(_trajectory(t, lap_min=[1.0, 0.5, 0.2, 0.1, 0.05], lap_max=np.full(5, 2.0)))
        assert report.initial_sign == 'positive'
        assert report.preserved

    def test_sign_lost(self):
        """Test a negative sign that turns positive."""
        t = np.linspace(0.0, 1.0, 5)
        report = sign_preservation(_trajectory(t, lap_min=np.full(5, -3.0), lap_max=[-1.0, -0.5, 0.0, 0.2, 0.1]))
        assert report.initial_sign == 'negative'
        assert not report.preserved
        assert report.worst == pytest.approx(0.2)

    def test_mixed_sign_is_vacuous(self):
        """Test that mixed initial signs are not monitored."""
        t = np.linspace(0.0, 1.0, 3)
        report = sign_preservation(_trajectory(t, lap_min=np.full(3, -1.0), lap_max=np.full(3, 1.0)))
        assert report.initial_sign == 'mixed'
        assert report.preserved

    def test_flatness_of_constant_run(self, unit_interval, fast_config):
        """Test u_max / u_min = 1 for constant data with zero flux."""
        state = SolutionState.from_u(0.0, np.full(unit_interval.n, 2.0))
        traj = run(state, RobinBoundary(0.0, 1.0), unit_interval, fast_config, 0.1, [0.05])
        _, ratio = flatness_ratio(traj)
        assert np.allclose(ratio, 1.0)

    def test_growth_ceiling(self):
        """Test log u_max / t for exp(0.5 t)."""
        t = np.linspace(0.0, 4.0, 9)
        assert growth_ceiling(_trajectory(t, u_max=np.exp(0.5 * t))) == pytest.approx(0.5)

    def test_decay_floor(self):
        """Test log u_min / t^2 for exp(-0.2 t^2)."""
        t = np.linspace(0.0, 4.0, 9)
        assert decay_floor(_trajectory(t, u_min=np.exp(-0.2 * t**2)), (1.0, 4.0)) == pytest.approx(-0.2)

    def test_empty_window_refused(self):
        """Test that a window with no rows is refused."""
        t = np.linspace(0.0, 1.0, 5)
        with pytest.raises(PreconditionError):
            growth_ceiling(_trajectory(t, u_max=np.ones(5)), (5.0, 6.0))

    def test_curvature_envelope_is_tight(self):
        """Test zero slack for R_max = B/(1 - B t) with B = -1."""
        t = np.linspace(0.0, 3.0, 7)
        _, slack = curvature_envelope_slack(_trajectory(t, R_max=-1.0 / (1.0 + t)))
        assert np.allclose(slack, 0.0)

    def test_area_convexity(self):
        """Test A(t) - A(0) - A'(0) t = t^2 for A = 1 + t + t^2."""
        t = np.linspace(0.0, 2.0, 5)
        _, slack = area_convexity_slack(_trajectory(t, area=1.0 + t + t**2, area_rate=1.0 + 2.0 * t))
        assert np.allclose(slack, t**2)

    def test_mass_law_relative_to_mass(self):
        """Test that a flux mismatch of 4e3 on a mass of 2e9 is a 2e-6 defect."""
        traj = _trajectory([0.0, 1.0, 2.0], mass=[1e9, 2e9, 3e9], dt=[0.0, 1.0, 1.0],
                           boundary_flux=[0.0, 1e9 + 4e3, 1e9])
        _, defect = mass_law_relative_residual(traj)
        assert defect == pytest.approx([2e-6, 0.0])

    def test_gauss_bonnet_relative_to_curvature(self):
        """Test that large curvature integrals scale the residual down."""
        traj = _trajectory([0.0, 1.0], gb_residual=[1e-3, 1e3], area_rate=[0.0, -1e9])
        _, residual = gauss_bonnet_relative_residual(traj)
        assert residual[0] == pytest.approx(1e-3)
        assert residual[1] == pytest.approx(1e3 / (2e9 - 1e3))
