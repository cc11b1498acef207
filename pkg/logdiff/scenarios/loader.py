"""YAML scenario files with validation errors mapped back to source lines."""

from __future__ import annotations
import logging
from pathlib import Path
from typing import Optional, Sequence, Union

import yaml
from pydantic import ValidationError

from ..errors import ScenarioError
from .models import Scenario

logger = logging.getLogger(__name__)


def _line_of(node, loc: Sequence) -> Optional[int]:
    """1-based line of the YAML node addressed by a pydantic error location."""
    line = node.start_mark.line + 1 if node is not None else None
    for key in loc:
        if isinstance(node, yaml.MappingNode):
            match = next((v for k, v in node.value if k.value == str(key)), None)
            if match is None:
                break
            node = match
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int):
            if key >= len(node.value):
                break
            node = node.value[key]
        else:
            break
        line = node.start_mark.line + 1
    return line


def parse_scenario(text: str, source: str = '<string>') -> Scenario:
    """Parse and validate scenario text."""
    try:
        root = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, 'problem_mark', None)
        line = mark.line + 1 if mark is not None else None
        logger.error('%s: YAML error: %s', source, exc)
        raise ScenarioError(f'{source}: invalid YAML: {getattr(exc, "problem", exc)}', line)
    if not isinstance(data, dict):
        raise ScenarioError(f'{source}: scenario must be a mapping', 1)

    try:
        return Scenario.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = list(first['loc'])
        line = _line_of(root, loc)
        where = '.'.join(str(p) for p in loc) or 'scenario'
        logger.error('%s: validation failed at %s (line %s): %s', source, where, line, first['msg'])
        raise ScenarioError(f'{source}: {where}: {first["msg"]}', line)


def load_scenario(path: Union[str, Path]) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as exc:
        raise ScenarioError(f'cannot read scenario file {path}: {exc.strerror}')
    return parse_scenario(text, str(path))
