"""Linear algebra for the cylinder Newton systems."""

from __future__ import annotations
import logging

import numpy as np
from scipy.sparse.linalg import LinearOperator, gmres

from ..errors import LinearSolveError

logger = logging.getLogger(__name__)


def thomas_batched(lower: np.ndarray, diag: np.ndarray, upper: np.ndarray,
                   rhs: np.ndarray) -> np.ndarray:
    """Solve independent tridiagonal systems stored column-wise.

    Row i of every column reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1];
    lower[0] and upper[-1] are ignored.
    """
    n = diag.shape[0]
    c = np.empty_like(diag)
    d = np.empty_like(rhs)
    c[0] = upper[0] / diag[0]
    d[0] = rhs[0] / diag[0]
    for i in range(1, n):
        m = diag[i] - lower[i] * c[i - 1]
        if i < n - 1:
            c[i] = upper[i] / m
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / m
    x = np.empty_like(rhs)
    x[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x


def line_preconditioner(lower, diag, upper) -> LinearOperator:
    """Exact inverse of the axial part, one tridiagonal solve per angular line."""
    shape = diag.shape
    size = diag.size

    def apply(v):
        return thomas_batched(lower, diag, upper, np.reshape(v, shape)).ravel()

    return LinearOperator((size, size), matvec=apply, dtype=float)


def solve_preconditioned(matrix, rhs: np.ndarray, preconditioner: LinearOperator,
                         rtol: float) -> np.ndarray:
    """Preconditioned GMRES; raises LinearSolveError unless it converged."""
    x, info = gmres(matrix, rhs, M=preconditioner, rtol=rtol, atol=0.0, restart=60, maxiter=20)
    if info != 0:
        logger.debug('GMRES stopped with info=%d', info)
        raise LinearSolveError(f'GMRES did not converge (info={info})')
    return x
