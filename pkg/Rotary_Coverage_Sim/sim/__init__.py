"""
Simulation driver: configuration, run loop, invariant checks and command line.
"""
from .config import (
    DEFAULT_CONFIG_PATH, DensityConfig, InitialStateConfig, IntegratorConfig, RegionConfig,
    SimConfig, load_config,
)
from .runner import EXIT_CONFIG_ERROR, EXIT_DYNAMICS_ERROR, EXIT_OK, run
from .checks import CheckResult, run_checks
from .cli import EXIT_USAGE, cli_main, main

__all__ = [
    'DEFAULT_CONFIG_PATH', 'DensityConfig', 'InitialStateConfig', 'IntegratorConfig', 'RegionConfig',
    'SimConfig', 'load_config', 'run', 'EXIT_OK', 'EXIT_CONFIG_ERROR', 'EXIT_DYNAMICS_ERROR',
    'CheckResult', 'run_checks', 'EXIT_USAGE', 'cli_main', 'main',
]
