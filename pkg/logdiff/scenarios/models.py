"""Scenario schema and run summaries."""

from __future__ import annotations
from dataclasses import dataclass, field
import json
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..analysis.fitting import RateModel
from ..core.models import SolverConfig

#: Marker for summary entries that do not apply to a run.
NOT_APPLICABLE = 'not_applicable'

SOLVERS = ('line1d', 'disc', 'cylinder2d')
SWEEPABLE = ('p', 'gamma', 'l', 'n', 'dt_init')


class _Strict(BaseModel):
    model_config = ConfigDict(extra='forbid')


class DomainSpec(_Strict):
    l: Optional[float] = Field(default=None, gt=0)
    n: Optional[int] = Field(default=None, ge=3)
    a: Optional[float] = Field(default=None, gt=0)
    nx: Optional[int] = Field(default=None, ge=3)
    ntheta: Optional[int] = Field(default=None, ge=4)


class BoundarySpec(_Strict):
    kind: Literal['robin', 'curvature', 'phi'] = 'robin'
    gamma: Optional[Union[float, Literal['auto']]] = None
    p: Optional[float] = None
    beta: Optional[float] = None
    phi: Optional[Literal['constant', 'modulated']] = None
    mean: Optional[float] = None
    amplitude: Optional[float] = None


class InitialSpec(_Strict):
    preset: Literal['constant', 'sech2', 'hemisphere', 'example_metric', 'exp_quadratic', 'table']
    c: Optional[float] = Field(default=None, gt=0)
    T: Optional[float] = Field(default=None, gt=0)
    values: Optional[List[float]] = None


class OutputGrid(_Strict):
    count: int = Field(default=50, ge=1)
    spacing: Literal['linear', 'log'] = 'linear'
    start: Optional[float] = Field(default=None, gt=0)


class AnalysisTask(_Strict):
    task: Literal[
        'fit', 'mass_bound_blowdown', 'mass_bound_blowup', 'moments', 'flatness',
        'curvature_envelope', 'area_convexity', 'area_length', 'growth_ceiling',
        'decay_floor', 'area_law', 'length_law', 'envelope',
    ]
    name: Optional[str] = None
    column: Optional[str] = None
    model: Optional[RateModel] = None
    window: Optional[Tuple[float, float]] = None
    n: Optional[float] = Field(default=None, ge=1)
    kind: Optional[Literal['r', 'q']] = None
    alpha: Optional[float] = Field(default=None, gt=0)

    @model_validator(mode='after')
    def _required_parameters(self):
        if self.task == 'fit' and (self.column is None or self.model is None):
            raise ValueError("fit tasks need 'column' and 'model'")
        if self.task == 'moments' and self.n is None:
            raise ValueError("moments tasks need 'n'")
        if self.task == 'area_length' and self.alpha is None:
            raise ValueError("area_length tasks need 'alpha'")
        return self

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        if self.task == 'fit':
            return f'{self.column}_{self.model.value}'
        if self.task == 'moments':
            return f'{self.kind or "r"}_{self.n:g}'
        return self.task


class Scenario(_Strict):
    """One configured run; see docs/SCENARIOS.md for the schema."""
    name: str = Field(min_length=1)
    solver: Literal['line1d', 'disc', 'cylinder2d'] = 'line1d'
    domain: DomainSpec
    boundary: BoundarySpec
    initial: InitialSpec
    blend_width: Optional[float] = Field(default=None, gt=0)
    solver_config: dict = Field(default_factory=dict)
    t_final: float = Field(gt=0)
    output_times: Union[List[float], OutputGrid] = Field(default_factory=OutputGrid)
    analysis: List[AnalysisTask] = Field(default_factory=list)

    @field_validator('solver_config')
    @classmethod
    def _known_settings(cls, value: dict) -> dict:
        SolverConfig.from_dict({**SolverConfig().to_dict(), **value})
        return value

    @model_validator(mode='after')
    def _consistent(self):
        d, b, i = self.domain, self.boundary, self.initial
        if self.solver == 'line1d':
            if d.n is None or (d.l is None and i.preset != 'example_metric'):
                raise ValueError("line1d scenarios need domain 'l' and 'n'")
            if b.kind != 'robin' or b.p is None or b.gamma is None:
                raise ValueError("line1d scenarios need a robin boundary with 'gamma' and 'p'")
            if b.gamma == 'auto' and i.preset not in ('sech2', 'example_metric', 'exp_quadratic'):
                raise ValueError(f"gamma 'auto' is not defined for the {i.preset} preset")
            if i.preset == 'hemisphere':
                raise ValueError('the hemisphere preset belongs to the disc solver')
        elif self.solver == 'disc':
            if d.a is None or d.n is None:
                raise ValueError("disc scenarios need domain 'a' and 'n'")
            if b.kind == 'curvature' and b.beta is None:
                raise ValueError("curvature boundaries need 'beta'")
            if b.kind == 'robin' and (b.p is None or not isinstance(b.gamma, float)):
                raise ValueError("robin disc boundaries need numeric 'gamma' and 'p'")
            if b.kind == 'phi':
                raise ValueError('phi boundaries belong to the cylinder2d solver')
            if i.preset not in ('constant', 'hemisphere', 'table'):
                raise ValueError(f'the {i.preset} preset is not available on the disc')
        else:
            if d.l is None or d.nx is None or d.ntheta is None:
                raise ValueError("cylinder2d scenarios need domain 'l', 'nx' and 'ntheta'")
            if b.kind != 'phi' or b.phi is None:
                raise ValueError("cylinder2d scenarios need a phi boundary")
            if b.phi == 'constant' and not isinstance(b.gamma, float):
                raise ValueError("constant phi needs a numeric 'gamma'")
            if b.phi == 'modulated' and (b.mean is None or b.amplitude is None):
                raise ValueError("modulated phi needs 'mean' and 'amplitude'")
            if i.preset != 'constant':
                raise ValueError('cylinder2d scenarios start from the constant preset')
        if i.preset in ('constant',) and i.c is None:
            raise ValueError("the constant preset needs 'c'")
        if i.preset == 'sech2' and i.c is None:
            raise ValueError("the sech2 preset needs 'c'")
        if i.preset in ('sech2', 'hemisphere') and i.T is None:
            raise ValueError(f"the {i.preset} preset needs 'T'")
        if i.preset == 'table' and not i.values:
            raise ValueError("the table preset needs 'values'")
        return self


@dataclass
class RunSummary:
    """Everything a scenario run reports; absent results are NOT_APPLICABLE."""
    name: str
    solver: str
    termination: str
    t_est: Union[float, str]
    final_time: float
    steps: int
    fits: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    monitors: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'solver': self.solver,
            'termination': self.termination,
            't_est': self.t_est,
            'final_time': self.final_time,
            'steps': self.steps,
            'fits': self.fits,
            'bounds': self.bounds,
            'monitors': self.monitors,
            'wall_time': self.wall_time,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'RunSummary':
        return cls(**data)

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)
