"""Finite-difference stencils shared by the solvers and the diagnostics.

All stencils act on w = log u along axis 0. Boundary rows eliminate a ghost
node through the outward slope g of w, which turns them into the half-cell
finite-volume rows; summing the rows against the trapezoid weights
telescopes to g_minus + g_plus.
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


def outward_slopes(w: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
    """Second-order one-sided outward derivatives at node 0 and node -1."""
    lower = (3.0 * w[0] - 4.0 * w[1] + w[2]) / (2.0 * h)
    upper = (3.0 * w[-1] - 4.0 * w[-2] + w[-3]) / (2.0 * h)
    return lower, upper


def interior_second_difference(w: np.ndarray, h: float) -> np.ndarray:
    return (w[2:] - 2.0 * w[1:-1] + w[:-2]) / h**2


@dataclass(frozen=True)
class GhostStencil:
    """Central second difference with Robin ghost nodes.

    The ghost value at the upper end is w[n-2] + ghost_factor * h * g, so the
    consistent choice is ghost_factor = 2. Other values exist only to build
    deliberately inconsistent operators for negative controls.
    """
    ghost_factor: float = 2.0

    def apply(self, w: np.ndarray, h: float, g_lower, g_upper) -> np.ndarray:
        out = np.empty_like(w, dtype=float)
        out[1:-1] = interior_second_difference(w, h)
        out[0] = (2.0 * (w[1] - w[0]) + self.ghost_factor * h * g_lower) / h**2
        out[-1] = (2.0 * (w[-2] - w[-1]) + self.ghost_factor * h * g_upper) / h**2
        return out

    def bands(self, n: int, h: float, dg_lower, dg_upper) -> np.ndarray:
        """Jacobian of apply() in scipy banded (1, 1) layout."""
        ab = np.zeros((3, n))
        ab[0, 1:] = 1.0 / h**2
        ab[1, :] = -2.0 / h**2
        ab[2, :-1] = 1.0 / h**2
        ab[0, 1] = 2.0 / h**2
        ab[2, -2] = 2.0 / h**2
        ab[1, 0] += self.ghost_factor * dg_lower / h
        ab[1, -1] += self.ghost_factor * dg_upper / h
        return ab


LOG_LAPLACIAN = GhostStencil()


def smoothstep(r):
    """C-infinity step: 0 for r <= 0, 1 for r >= 1."""
    r = np.clip(np.asarray(r, dtype=float), 0.0, 1.0)
    with np.errstate(divide='ignore', over='ignore'):
        a = np.where(r > 0, np.exp(-1.0 / np.where(r > 0, r, 1.0)), 0.0)
        b = np.where(r < 1, np.exp(-1.0 / np.where(r < 1, 1.0 - r, 1.0)), 0.0)
    return a / (a + b)


def collar_profile(s, width: float):
    """Correction shape -s (1 - smoothstep(s / width)).

    Vanishes at s = 0 and for s >= width; its derivative in s is -1 at s = 0.
    """
    s = np.asarray(s, dtype=float)
    return -s * (1.0 - smoothstep(s / width))


def blend_to_slopes(w: np.ndarray, h: float, width: float,
                    lower: Optional[np.ndarray] = None,
                    upper: Optional[np.ndarray] = None) -> np.ndarray:
    """Add collar corrections so the one-sided outward slopes hit the targets.

    Boundary values are left untouched, so targets that depend only on them
    stay fixed and the correction amplitude solves a linear equation.
    """
    w = np.array(w, dtype=float)
    n = w.shape[0]
    s = h * np.arange(n)
    psi = collar_profile(s, width)
    d_psi = (3.0 * psi[0] - 4.0 * psi[1] + psi[2]) / (2.0 * h)
    current_lower, current_upper = outward_slopes(w, h)
    if lower is not None:
        sigma = (np.asarray(lower) - current_lower) / d_psi
        w += np.multiply.outer(psi, sigma)
    if upper is not None:
        sigma = (np.asarray(upper) - current_upper) / d_psi
        w += np.multiply.outer(psi[::-1], sigma)
    return w
