"""Rotationally symmetric metrics dx^2 + f(x)^2 dtheta^2 and their conformal form."""

from __future__ import annotations
from dataclasses import dataclass
import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import bisect

from ..core.models import Interval1D, RobinBoundary, SolutionState
from ..errors import BracketError, PreconditionError

logger = logging.getLogger(__name__)

#: Published half-length for the example metric.
EXAMPLE_HALF_LENGTH = 0.74013

_FD_STEP = 1e-3


@dataclass(frozen=True)
class MetricProfile:
    """Warping function f of the metric dx^2 + f(x)^2 dtheta^2 on [-l, l].

    Derivatives are optional; missing ones fall back to central differences.
    """
    f: Callable[[float], float]
    l: float
    df: Optional[Callable[[float], float]] = None
    d2f: Optional[Callable[[float], float]] = None
    d3f: Optional[Callable[[float], float]] = None

    def derivatives(self, x: float) -> Tuple[float, float, float, float]:
        """f, f', f'', f''' at x."""
        f, e = self.f, _FD_STEP
        d1 = self.df(x) if self.df else (f(x + e) - f(x - e)) / (2 * e)
        d2 = self.d2f(x) if self.d2f else (f(x + e) - 2 * f(x) + f(x - e)) / e**2
        d3 = self.d3f(x) if self.d3f else (
            f(x + 2 * e) - 2 * f(x + e) + 2 * f(x - e) - f(x - 2 * e)) / (2 * e**3)
        return f(x), d1, d2, d3

    def curvature(self, x) -> float:
        """Scalar curvature R = -2 f''/f."""
        f, _, d2, _ = self.derivatives(x)
        return -2.0 * d2 / f

    def boundary_curvature(self) -> float:
        """Geodesic curvature f'(l)/f(l) of the circle x = l."""
        f, d1, _, _ = self.derivatives(self.l)
        return d1 / f


def example_profile(l: float = EXAMPLE_HALF_LENGTH) -> MetricProfile:
    """f(x) = cos x - x^2/4, positively curved in the middle."""
    return MetricProfile(
        f=lambda x: math.cos(x) - 0.25 * x**2,
        l=l,
        df=lambda x: -math.sin(x) - 0.5 * x,
        d2f=lambda x: -math.cos(x) - 0.5,
        d3f=lambda x: math.sin(x),
    )


def compatibility_function(profile: MetricProfile, x: float) -> float:
    """2 f' f'' - f f''' at x; its zeros are where dR/dN = k R holds."""
    f, d1, d2, d3 = profile.derivatives(x)
    return 2.0 * d1 * d2 - f * d3


def find_compatible_length(profile: Optional[MetricProfile] = None,
                           bracket: Tuple[float, float] = (0.5, 1.0),
                           tol: float = 1e-8) -> float:
    """Half-length at which the boundary curvature condition is compatible.

    Bisection on `bracket`; raises BracketError without a sign change.
    """
    profile = profile or example_profile()
    a, b = bracket
    fa = compatibility_function(profile, a)
    fb = compatibility_function(profile, b)
    if fa * fb > 0:
        raise BracketError(
            f'no sign change of the compatibility function on ({a}, {b}): '
            f'values {fa:.6g}, {fb:.6g}'
        )
    return float(bisect(lambda x: compatibility_function(profile, x), a, b, xtol=tol))


@dataclass
class ConformalProfile:
    """A warped-product metric rewritten as u (ds^2 + dtheta^2)."""
    state: SolutionState
    domain: Interval1D
    x_of_s: np.ndarray
    gamma: float

    def boundary(self) -> RobinBoundary:
        """Robin data with p = 3/2, for which gamma is the geodesic curvature."""
        return RobinBoundary(self.gamma, 1.5)


def _check_positive(mp: MetricProfile):
    values = np.array([mp.f(x) for x in np.linspace(-mp.l, mp.l, 4001)])
    if not np.all(values > 0):
        raise PreconditionError('profile must stay positive on [-l, l]')


def conformal_interval(mp: MetricProfile, n: int = 129) -> Interval1D:
    """Interval of the conformal coordinate ds = dx / f, centred at zero, with n nodes."""
    _check_positive(mp)
    total, _ = quad(lambda x: 1.0 / mp.f(x), -mp.l, mp.l, epsabs=1e-13, epsrel=1e-13)
    return Interval1D(0.5 * total, n)


def profile_to_conformal(mp: MetricProfile, dom: Interval1D) -> ConformalProfile:
    """Change to the conformal coordinate ds = dx / f, where u = f^2.

    dom must be the conformal interval of mp (see conformal_interval); the
    profile is sampled on its nodes.
    """
    expected = conformal_interval(mp, dom.n)
    if not math.isclose(dom.l, expected.l, rel_tol=1e-9):
        raise PreconditionError(
            f'grid half-length {dom.l} is not the conformal half-length {expected.l:.10g}'
        )
    total = 2.0 * dom.l
    s_nodes = dom.x + dom.l
    solution = solve_ivp(
        lambda s, x: [mp.f(x[0])],
        (0.0, total),
        [-mp.l],
        t_eval=s_nodes,
        method='DOP853',
        rtol=1e-12,
        atol=1e-12,
    )
    if not solution.success:
        raise PreconditionError(f'conformal coordinate solve failed: {solution.message}')
    x_nodes = solution.y[0]
    x_nodes[0], x_nodes[-1] = -mp.l, mp.l
    u = np.array([mp.f(x) for x in x_nodes]) ** 2
    logger.debug('Conformal half-length %.10g for metric half-length %g', dom.l, mp.l)
    return ConformalProfile(
        state=SolutionState.from_u(0.0, u),
        domain=dom,
        x_of_s=x_nodes,
        gamma=mp.boundary_curvature(),
    )
