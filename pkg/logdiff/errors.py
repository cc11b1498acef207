"""Exception hierarchy for the laboratory."""

from __future__ import annotations
from typing import Optional


class LogDiffError(Exception):
    """Base class for all laboratory errors."""


class PreconditionError(LogDiffError, ValueError):
    """An operation was called outside its stated preconditions."""


class BracketError(PreconditionError):
    """A bisection bracket does not contain a sign change."""


class FitError(PreconditionError):
    """A rate fit cannot be performed on the given series."""


class InsufficientPointsError(FitError):
    """Too few points inside the fit window."""


class NonPositiveValuesError(FitError):
    """A log-space fit was asked to fit non-positive values."""


class LinearSolveError(LogDiffError):
    """An iterative linear solve stopped before reaching its tolerance."""


class ScenarioError(LogDiffError):
    """A scenario file failed to parse or validate."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)
