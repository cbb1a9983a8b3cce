"""Deterministic RK4 integration and trajectory measurements."""

from .integrator import (
    SimConfig,
    Trajectory,
    default_initial_state,
    integrate,
    integrate_dimensional,
)
from .metrics import (
    OscillationClass,
    PeriodEstimate,
    SyncMetric,
    classify_oscillation,
    estimate_period,
    first_harmonic_amplitude,
    measure_sync,
    window_start,
)

__all__ = [
    'SimConfig',
    'Trajectory',
    'default_initial_state',
    'integrate',
    'integrate_dimensional',
    'OscillationClass',
    'PeriodEstimate',
    'SyncMetric',
    'classify_oscillation',
    'estimate_period',
    'first_harmonic_amplitude',
    'measure_sync',
    'window_start',
]
