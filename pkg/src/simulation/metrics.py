"""Empirical period, synchronization error and oscillation verdict of a trajectory."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.integrate import trapezoid

from src.analysis.equilibrium import solve_equilibrium
from src.model.params import GoodwinParams
from src.simulation.integrator import SimConfig, Trajectory
from src.utils.errors import NotOscillatoryError, PreconditionError

MIN_CYCLES = 3


class OscillationClass(str, Enum):
    OSCILLATORY = "oscillatory"
    QUIESCENT = "quiescent"


@dataclass(frozen=True)
class PeriodEstimate:
    """Collective period from upward mean-crossings of every x3_i."""
    period_mean: float
    period_std: float
    n_cycles: int
    per_oscillator: Tuple[float, ...]

    def as_dict(self) -> dict:
        return {"period_mean": self.period_mean, "period_std": self.period_std,
                "n_cycles": self.n_cycles, "per_oscillator": list(self.per_oscillator)}


@dataclass(frozen=True)
class SyncMetric:
    """Largest pairwise x3 deviation over the measurement window."""
    sync_error: float
    amplitude: float
    tolerance: float
    synchronized: bool
    component_errors: Dict[int, float] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"sync_error": self.sync_error, "amplitude": self.amplitude,
                "tolerance": self.tolerance, "synchronized": self.synchronized,
                "component_errors": {str(k): v for k, v in self.component_errors.items()}}


def window_start(traj: Trajectory, cfg: SimConfig) -> int:
    """Index of the first post-transient sample."""
    times = traj.times
    cutoff = times[0] + cfg.transient_fraction * (times[-1] - times[0])
    start = int(np.searchsorted(times, cutoff - 1e-12 * max(1.0, abs(cutoff))))
    if len(times) - start < 2:
        raise PreconditionError("Trajectory is not longer than its transient window")
    return start


def _upward_crossings(t: np.ndarray, x: np.ndarray) -> np.ndarray:
    x = x - x.mean()
    k = np.nonzero((x[:-1] < 0) & (x[1:] >= 0))[0]
    # linear interpolation inside the step
    return t[k] + (-x[k]) / (x[k + 1] - x[k]) * (t[k + 1] - t[k])


def estimate_period(traj: Trajectory, cfg: SimConfig) -> PeriodEstimate:
    """
    Mean gap between upward mean-crossings of x3_i on the post-transient
    window, averaged over oscillators.

    Raises:
        NotOscillatoryError: If any oscillator shows fewer than three
            complete cycles.
    """
    start = window_start(traj, cfg)
    t = traj.times[start:]
    per_oscillator = []
    gaps = []
    n_cycles = None
    for i in range(traj.n):
        crossings = _upward_crossings(t, traj.x3[start:, i])
        if len(crossings) < MIN_CYCLES + 1:
            raise NotOscillatoryError(
                f"Oscillator {i + 1} has {max(len(crossings) - 1, 0)} complete cycles, "
                f"need at least {MIN_CYCLES}")
        diffs = np.diff(crossings)
        per_oscillator.append(float(diffs.mean()))
        gaps.append(diffs)
        n_cycles = len(diffs) if n_cycles is None else min(n_cycles, len(diffs))

    return PeriodEstimate(
        period_mean=float(np.mean(per_oscillator)),
        period_std=float(np.concatenate(gaps).std()),
        n_cycles=int(n_cycles),
        per_oscillator=tuple(per_oscillator),
    )


def _amplitude_threshold(traj: Trajectory, cfg: SimConfig, x0: Optional[float]) -> float:
    if x0 is None:
        x0 = solve_equilibrium(traj.params).x0 if isinstance(traj.params, GoodwinParams) else 0.0
    return cfg.amplitude_rtol * max(1.0, x0)


def measure_sync(traj: Trajectory, cfg: SimConfig, x0: Optional[float] = None) -> SyncMetric:
    """
    Pairwise maximum deviation of x3 over the measurement window.

    The verdict compares it with ``cfg.sync_rtol`` times the largest
    peak-to-peak x3 amplitude, floored at the oscillation threshold so that
    a network at rest in consensus counts as synchronized. For a
    disconnected topology the error is also reported per connected component.
    """
    x3 = traj.x3[window_start(traj, cfg):]
    spread = x3.max(axis=1) - x3.min(axis=1)
    sync_error = float(spread.max())
    amplitude = float(np.ptp(x3, axis=0).max())
    tolerance = cfg.sync_rtol * max(amplitude, _amplitude_threshold(traj, cfg, x0))

    component_errors = {}
    if traj.topology is not None and traj.topology.components:
        labels = np.asarray(traj.topology.components)
        for label in np.unique(labels):
            members = x3[:, labels == label]
            component_errors[int(label)] = float((members.max(axis=1) - members.min(axis=1)).max())

    return SyncMetric(
        sync_error=sync_error,
        amplitude=amplitude,
        tolerance=tolerance,
        synchronized=bool(sync_error <= tolerance),
        component_errors=component_errors,
    )


def classify_oscillation(traj: Trajectory, cfg: SimConfig, x0: Optional[float] = None) -> OscillationClass:
    """
    Oscillatory iff every post-transient x3_i swings by more than
    ``cfg.amplitude_rtol * max(1, x0)`` and a period can be estimated.

    ``x0`` defaults to the equilibrium of ``traj.params``.
    """
    threshold = _amplitude_threshold(traj, cfg, x0)
    x3 = traj.x3[window_start(traj, cfg):]
    if not np.all(np.ptp(x3, axis=0) > threshold):
        return OscillationClass.QUIESCENT
    try:
        estimate_period(traj, cfg)
    except NotOscillatoryError:
        return OscillationClass.QUIESCENT
    return OscillationClass.OSCILLATORY


def first_harmonic_amplitude(traj: Trajectory, period: float, n_cycles: int = 10, oscillator: int = 0) -> float:
    """
    Amplitude of the Fourier component of x3 at 2 pi / period, projected over
    the last ``n_cycles`` periods.

    Raises:
        PreconditionError: If the trajectory is shorter than the window.
    """
    if period <= 0:
        raise PreconditionError(f"period must be positive, got {period}")
    times = traj.times
    t_start = times[-1] - n_cycles * period
    if t_start < times[0]:
        raise PreconditionError(f"Trajectory shorter than {n_cycles} periods")
    mask = times >= t_start
    t = times[mask]
    x = traj.x3[mask, oscillator]
    span = t[-1] - t[0]
    w = 2 * np.pi / period
    a = 2.0 / span * trapezoid(x * np.sin(w * t), t)
    b = 2.0 / span * trapezoid(x * np.cos(w * t), t)
    return float(np.hypot(a, b))
