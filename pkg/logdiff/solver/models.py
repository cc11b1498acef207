"""Step outcomes, diagnostic rows and trajectories."""

from __future__ import annotations
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Callable, List, Optional, Tuple
import json

import numpy as np

from ..core.models import SolutionState

#: Right-hand side source f(x, t); only the manufactured-solution mode uses one.
SourceTerm = Callable[[np.ndarray, float], np.ndarray]


class Termination(str, Enum):
    """How a run ended."""
    REACHED_T_FINAL = 'reached_t_final'
    BLOW_UP = 'blow_up'
    BLOW_DOWN = 'blow_down'
    STEP_UNDERFLOW = 'step_underflow'

    @property
    def singular(self) -> bool:
        return self in (Termination.BLOW_UP, Termination.BLOW_DOWN)


@dataclass
class StepOutcome:
    """Result of one implicit step attempt."""
    state: Optional[SolutionState]
    dt_used: float
    newton_iters: int
    accepted: bool
    reason: str = ''
    rel_change: float = float('nan')


@dataclass
class DiagnosticRow:
    """Per-step monitor values."""
    t: float
    dt: float
    newton_iters: int
    u_min: float
    u_max: float
    mass: float
    R_min: float
    R_max: float
    area: float
    length: float
    gb_residual: float
    lap_min: float
    lap_max: float
    boundary_flux: float
    area_rate: float
    r_boundary: float
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'DiagnosticRow':
        return cls(**data)


@dataclass
class SingularEvent:
    """Outcome of singularity detection."""
    kind: str
    t_est: Optional[float] = None

    def to_dict(self) -> dict:
        return {'kind': self.kind, 't_est': self.t_est}


@dataclass
class Trajectory:
    """Sampled states and per-step diagnostics of one run.

    `initial` holds the diagnostics of the starting state; `rows` has one
    entry per accepted step.
    """
    solver: str
    domain: dict
    boundary: dict
    exponent: Optional[float]
    initial: DiagnosticRow
    rows: List[DiagnosticRow]
    samples: List[SolutionState]
    termination: Termination
    t_est: Optional[float] = None
    extras: dict = field(default_factory=dict)

    @property
    def all_rows(self) -> List[DiagnosticRow]:
        return [self.initial] + self.rows

    @property
    def final_time(self) -> float:
        return self.all_rows[-1].t

    @property
    def sample_times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    def series(self, name: str) -> Tuple[np.ndarray, np.ndarray]:
        """Times and values of one diagnostic column, initial row included."""
        rows = self.all_rows
        t = np.array([r.t for r in rows])
        if hasattr(rows[0], name) and name != 'extra':
            values = np.array([getattr(r, name) for r in rows], dtype=float)
        else:
            values = np.array([r.extra[name] for r in rows], dtype=float)
        return t, values

    def to_dict(self) -> dict:
        return {
            'solver': self.solver,
            'domain': self.domain,
            'boundary': self.boundary,
            'exponent': self.exponent,
            'initial': self.initial.to_dict(),
            'rows': [r.to_dict() for r in self.rows],
            'samples': [s.to_dict() for s in self.samples],
            'termination': self.termination.value,
            't_est': self.t_est,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'Trajectory':
        return cls(
            solver=data['solver'],
            domain=data['domain'],
            boundary=data['boundary'],
            exponent=data.get('exponent'),
            initial=DiagnosticRow.from_dict(data['initial']),
            rows=[DiagnosticRow.from_dict(r) for r in data.get('rows', [])],
            samples=[SolutionState.from_dict(s) for s in data.get('samples', [])],
            termination=Termination(data['termination']),
            t_est=data.get('t_est'),
        )

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)
