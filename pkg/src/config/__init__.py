"""Run configuration and environment settings."""

from .run_config import (
    MAX_SWEEP_POINTS,
    RunConfig,
    SweepSpec,
    apply_overrides,
    build_topology,
    config_hash,
    load_run_config,
    parse_run_config,
)
from .settings import SCHEMA_VERSION, THREADS_ENV, TOOL_VERSION, sweep_workers

__all__ = [
    'MAX_SWEEP_POINTS',
    'RunConfig',
    'SweepSpec',
    'apply_overrides',
    'build_topology',
    'config_hash',
    'load_run_config',
    'parse_run_config',
    'SCHEMA_VERSION',
    'THREADS_ENV',
    'TOOL_VERSION',
    'sweep_workers',
]
