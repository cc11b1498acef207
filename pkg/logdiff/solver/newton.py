"""Damped Newton iteration for the backward-Euler systems."""

from __future__ import annotations
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from ..errors import LinearSolveError

MIN_DAMPING = 2.0 ** -10


class ImplicitProblem(Protocol):
    """What the integrator needs from a discretized problem.

    residual(w, w_old, t, dt) is (e^w - e^w_old)/dt - L(w, t) - S(t); the
    Jacobian solve returns delta with J(w) delta = rhs.
    """

    def residual(self, w: np.ndarray, w_old: np.ndarray, t: float, dt: float) -> np.ndarray: ...

    def solve_jacobian(self, w: np.ndarray, t: float, dt: float, rhs: np.ndarray) -> np.ndarray: ...


@dataclass
class NewtonResult:
    w: np.ndarray
    iterations: int
    converged: bool
    reason: str = ''


def _merit(F: np.ndarray, w_old: np.ndarray, dt: float) -> float:
    # dimensionless: the relative change of u the residual stands for
    with np.errstate(over='ignore', invalid='ignore'):
        return float(np.max(np.abs(F * dt * np.exp(-w_old))))


def damped_newton(problem: ImplicitProblem, w_old: np.ndarray, t: float, dt: float,
                  tol: float, max_iter: int) -> NewtonResult:
    """Solve the step equations starting from w_old.

    Each update is halved until the scaled residual decreases. Converged when
    the full Newton update and the scaled residual it leaves are both <= tol
    in max norm.
    """
    w = np.array(w_old, dtype=float)
    with np.errstate(over='ignore', invalid='ignore'):
        F = problem.residual(w, w_old, t, dt)
    merit = _merit(F, w_old, dt)
    if not np.isfinite(merit):
        return NewtonResult(w, 0, False, 'non-finite initial residual')

    for iteration in range(1, max_iter + 1):
        try:
            with np.errstate(over='ignore', invalid='ignore'):
                delta = problem.solve_jacobian(w, t, dt, -F)
        except LinearSolveError as exc:
            return NewtonResult(w, iteration, False, str(exc))
        if not np.all(np.isfinite(delta)):
            return NewtonResult(w, iteration, False, 'singular Jacobian')
        size = float(np.max(np.abs(delta)))
        if size <= tol:
            w = w + delta
            with np.errstate(over='ignore', invalid='ignore'):
                F = problem.residual(w, w_old, t, dt)
            merit = _merit(F, w_old, dt)
            if merit <= tol:
                return NewtonResult(w, iteration, True)
            if not np.isfinite(merit):
                return NewtonResult(w, iteration, False, 'non-finite residual')
            continue

        damping = 1.0
        while True:
            trial = w + damping * delta
            with np.errstate(over='ignore', invalid='ignore'):
                F_trial = problem.residual(trial, w_old, t, dt)
            merit_trial = _merit(F_trial, w_old, dt)
            if np.isfinite(merit_trial) and merit_trial < merit:
                break
            damping *= 0.5
            if damping < MIN_DAMPING:
                return NewtonResult(w, iteration, False, 'line search stalled')

        w, F, merit = trial, F_trial, merit_trial

    return NewtonResult(w, max_iter, False, 'iteration cap reached')
