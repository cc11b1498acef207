"""Laboratory configuration."""

import os

from dotenv import load_dotenv

load_dotenv()


class Config:
    """Base configuration."""
    OUTPUT_DIR = os.environ.get('LOGDIFF_OUTPUT_DIR', 'out')
    LOG_LEVEL = os.environ.get('LOGDIFF_LOG_LEVEL', 'INFO')
    SWEEP_WORKERS = int(os.environ.get('LOGDIFF_SWEEP_WORKERS', 1))

    # Defaults for SolverConfig; scenario files override individual keys
    SOLVER_DEFAULTS = {
        'dt_init': 1e-4,
        'dt_min': 1e-14,
        'dt_max': 5e-2,
        'newton_tol': 1e-9,
        'newton_max_iter': 25,
        'step_rel_change': 0.1,
        'blow_up_threshold': 1e10,
        'blow_down_threshold': 1e-10,
    }

    # Verification battery grids
    VERIFY_SPATIAL_NODES = (33, 65, 129)
    VERIFY_ORACLE_NODES = 257
    VERIFY_ORDER_SLACK = 0.3
    VERIFY_T_EST_TOLERANCE = 0.02


class DevelopmentConfig(Config):
    """Development configuration."""
    LOG_LEVEL = os.environ.get('LOGDIFF_LOG_LEVEL', 'DEBUG')


class TestingConfig(Config):
    """Testing configuration."""
    OUTPUT_DIR = 'test_out'
    SWEEP_WORKERS = 1


class QuickConfig(Config):
    """Reduced grids for `verify --quick`."""
    VERIFY_SPATIAL_NODES = (17, 33)
    VERIFY_ORACLE_NODES = 33
    VERIFY_ORDER_SLACK = 0.5
    VERIFY_T_EST_TOLERANCE = 0.05


config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'quick': QuickConfig,
    'default': Config
}


def get_config(name: str = None):
    """Return the configuration class selected by name or LOGDIFF_ENV."""
    name = name or os.environ.get('LOGDIFF_ENV', 'default')
    return config.get(name, Config)
