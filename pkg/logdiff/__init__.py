"""Numerical laboratory for logarithmic diffusion with nonlinear Robin boundaries."""

import logging

__version__ = '0.1.0'


def configure_logging(level=None):
    """Configure root logging once for command-line use."""
    from .config import get_config

    level = level or get_config().LOG_LEVEL
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s'
    )
    logging.getLogger().setLevel(level)
    logging.captureWarnings(True)
