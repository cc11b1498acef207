"""Adaptive backward-Euler integration shared by every solver."""

from __future__ import annotations
import logging
from typing import Callable, Iterable, List, Optional

import numpy as np

from ..core.models import SolutionState, SolverConfig
from ..errors import PreconditionError
from .models import DiagnosticRow, StepOutcome, Termination, Trajectory
from .events import collapse_at_underflow, detect_singularity
from .newton import ImplicitProblem, damped_newton

logger = logging.getLogger(__name__)

Diagnose = Callable[[SolutionState, float, int], DiagnosticRow]


def take_step(problem: ImplicitProblem, state: SolutionState, cfg: SolverConfig,
              dt: float) -> StepOutcome:
    """Attempt one backward-Euler step of size dt.

    Accepted iff Newton converges and the largest nodewise relative change
    of u stays within cfg.step_rel_change.
    """
    if not (dt > 0 and dt <= cfg.dt_max * (1 + 1e-12)):
        raise PreconditionError(f'step {dt} outside (0, dt_max={cfg.dt_max}]')
    t_new = state.t + dt
    result = damped_newton(problem, state.w, t_new, dt, cfg.newton_tol, cfg.newton_max_iter)
    if not result.converged:
        return StepOutcome(None, dt, result.iterations, False, result.reason)
    if not np.all(np.isfinite(result.w)):
        return StepOutcome(None, dt, result.iterations, False, 'overflow')
    with np.errstate(over='ignore', invalid='ignore'):
        rel_change = float(np.max(np.abs(np.expm1(result.w - state.w))))
    if not np.isfinite(rel_change):
        return StepOutcome(None, dt, result.iterations, False, 'overflow')
    if rel_change > cfg.step_rel_change:
        return StepOutcome(None, dt, result.iterations, False,
                           f'relative change {rel_change:.3g} over cap', rel_change)
    return StepOutcome(SolutionState(t_new, result.w), dt, result.iterations, True,
                       rel_change=rel_change)


def output_schedule(t0: float, t_final: float, output_times: Optional[Iterable[float]]) -> List[float]:
    """Sorted output times inside (t0, t_final], always ending at t_final."""
    times = sorted({float(t) for t in (output_times or []) if t0 < t < t_final})
    times.append(float(t_final))
    return times


def integrate(problem: ImplicitProblem, state0: SolutionState, cfg: SolverConfig,
              t_final: float, output_times: Optional[Iterable[float]],
              diagnose: Diagnose, solver: str, domain: dict, boundary: dict,
              exponent: Optional[float] = None) -> Trajectory:
    """Integrate from state0 to t_final with adaptive steps.

    dt grows by cfg.dt_growth after an easy acceptance and halves after a
    rejection. Steps are clamped to land on output times. The run stops early
    on the blow-up/blow-down thresholds or when dt falls below cfg.dt_min.
    An underflow while u_min (u_max) runs monotonically toward its threshold
    is reported as blow-down (blow-up).
    """
    if t_final <= state0.t:
        raise PreconditionError(f't_final {t_final} must exceed the start time {state0.t}')
    schedule = output_schedule(state0.t, t_final, output_times)
    logger.info('Starting %s run: domain=%s boundary=%s t_final=%g',
                solver, domain, boundary, t_final)

    state = state0
    initial = diagnose(state0, 0.0, 0)
    rows: List[DiagnosticRow] = []
    samples = [state0]
    termination = None
    dt = cfg.dt_init
    k = 0

    while termination is None:
        target = schedule[k]
        dt_try = min(dt, target - state.t)
        clamped = dt_try < dt
        outcome = take_step(problem, state, cfg, dt_try)

        if not outcome.accepted:
            dt = 0.5 * dt_try
            logger.debug('Rejected step at t=%.10g dt=%.3g: %s', state.t, dt_try, outcome.reason)
            if dt < cfg.dt_min:
                termination = Termination.STEP_UNDERFLOW
            continue

        new_state = outcome.state
        reached = clamped or abs(target - new_state.t) <= 1e-12 * max(1.0, abs(target))
        if reached:
            new_state = new_state.at(target)
        state = new_state
        row = diagnose(state, dt_try, outcome.newton_iters)
        rows.append(row)

        if reached:
            samples.append(state)
            k += 1
            if k == len(schedule):
                termination = Termination.REACHED_T_FINAL
        if row.u_max > cfg.blow_up_threshold:
            termination = Termination.BLOW_UP
        elif row.u_min < cfg.blow_down_threshold:
            termination = Termination.BLOW_DOWN

        easy = (outcome.newton_iters <= cfg.easy_newton_iters
                and outcome.rel_change < 0.5 * cfg.step_rel_change)
        if easy and not clamped:
            dt = min(dt * cfg.dt_growth, cfg.dt_max)

    traj = Trajectory(
        solver=solver,
        domain=domain,
        boundary=boundary,
        exponent=exponent,
        initial=initial,
        rows=rows,
        samples=samples,
        termination=termination,
    )
    if termination is Termination.STEP_UNDERFLOW:
        collapse = collapse_at_underflow(traj, cfg.blow_down_threshold, cfg.blow_up_threshold)
        if collapse is None:
            logger.warning('Step underflow at t=%.10g after %d accepted steps', state.t, len(rows))
        else:
            logger.info('Step underflow at t=%.10g during a monotone collapse; classified as %s',
                        state.t, collapse.value)
            traj.termination = termination = collapse
    if termination.singular:
        try:
            traj.t_est = detect_singularity(traj).t_est
        except PreconditionError as exc:
            logger.warning('No extrapolated singular time: %s', exc)
        logger.info('Run ended with %s at t=%.10g (T_est=%s)',
                    termination.value, state.t, traj.t_est)
    elif termination is Termination.REACHED_T_FINAL:
        logger.info('Run reached t_final=%g in %d steps', t_final, len(rows))
    return traj
