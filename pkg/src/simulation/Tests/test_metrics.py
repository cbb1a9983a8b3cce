import os
import sys
from functools import lru_cache

import numpy as np
import pytest

# Add project root to path so we can import src
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '../../..')))

from src.analysis.harmonic_balance import solve_hb_amplitudes
from src.model.network import complete_topology, laplacian_from_weights, ring_topology, table1_topology
from src.model.params import GoodwinParams
from src.simulation.integrator import SimConfig, Trajectory, default_initial_state, integrate
from src.simulation.metrics import (
    OscillationClass,
    classify_oscillation,
    estimate_period,
    first_harmonic_amplitude,
    measure_sync,
)
from src.utils.errors import NotOscillatoryError

CFG = SimConfig()


@lru_cache(maxsize=None)
def reference_run(b, scale=1.0) -> Trajectory:
    """Nine-cell network, p = 17, default settings (cached across tests)."""
    g = GoodwinParams(*b, 17) if isinstance(b, tuple) else GoodwinParams.uniform(b, 17)
    c = table1_topology().scaled(scale) if scale != 1.0 else table1_topology()
    return integrate(g, c, default_initial_state(g, c, CFG), CFG)


def _synthetic(signal, t_end=200.0, dt=0.01):
    t = np.arange(int(round(t_end / dt)) + 1) * dt
    return Trajectory.from_x3(t, signal(t))


def test_period_of_pure_sinusoid():
    """Zero crossings recover a known period."""
    traj = _synthetic(lambda t: np.sin(2 * np.pi * t / 7.2552))
    estimate = estimate_period(traj, CFG)
    assert estimate.period_mean == pytest.approx(7.2552, abs=1e-3)
    assert estimate.n_cycles >= 3
    assert estimate.period_std < 1e-3


def test_period_with_harmonic_and_offset():
    """A second harmonic and a mean offset do not disturb the fundamental."""
    traj = _synthetic(lambda t: 3 + 0.5 * np.sin(2 * np.pi * t / 5) + 0.05 * np.sin(4 * np.pi * t / 5))
    assert estimate_period(traj, CFG).period_mean == pytest.approx(5.0, abs=5e-3)


def test_period_needs_three_cycles():
    """Two cycles in the window are not enough."""
    traj = _synthetic(lambda t: np.sin(2 * np.pi * t / 45.0))
    with pytest.raises(NotOscillatoryError):
        estimate_period(traj, CFG)


def test_constant_trajectory_is_quiescent():
    """No swing, no oscillation."""
    traj = _synthetic(lambda t: np.full_like(t, 1.1))
    assert classify_oscillation(traj, CFG, x0=1.1) is OscillationClass.QUIESCENT
    with pytest.raises(NotOscillatoryError):
        estimate_period(traj, CFG)


def test_first_harmonic_amplitude_of_sinusoid():
    """Fourier projection returns the sine amplitude."""
    traj = _synthetic(lambda t: 2 + 0.3 * np.sin(2 * np.pi * t / 4 + 0.7))
    assert first_harmonic_amplitude(traj, 4.0) == pytest.approx(0.3, abs=1e-3)


@pytest.mark.parametrize("b,actual", [
    (0.4, 10.68),
    (0.5, 8.00),
    (0.6, 6.31),
    (0.7, 5.23),
    (0.8, 4.53),
])
def test_collective_period_matches_reference(b, actual):
    """Measured periods agree with the published actual values within 2%."""
    estimate = estimate_period(reference_run(b), CFG)
    assert estimate.period_mean == pytest.approx(actual, rel=0.02)
    assert len(estimate.per_oscillator) == 9
    assert estimate.n_cycles >= 20


def test_period_decreases_with_degradation_rate():
    """Faster degradation, shorter period."""
    periods = [estimate_period(reference_run(b), CFG).period_mean for b in (0.4, 0.5, 0.6, 0.7, 0.8)]
    assert all(a > b for a, b in zip(periods, periods[1:]))


@pytest.mark.parametrize("b,oscillates", [
    (0.4, True),
    (0.5, True),
    (0.6, True),
    (0.7, True),
    (0.8, True),
    (0.85, False),
    (0.9, False),
    (1.0, False),
    ((0.7, 0.8, 0.9), True),
    ((0.9, 0.8, 0.8), False),
])
def test_oscillation_synchronization_verdicts(b, oscillates):
    """Simulated verdicts follow the published table on the nine-cell network."""
    traj = reference_run(b)
    oscillation = classify_oscillation(traj, CFG)
    sync = measure_sync(traj, CFG)
    assert (oscillation is OscillationClass.OSCILLATORY) == oscillates
    assert sync.synchronized
    assert sync.sync_error >= 0
    assert traj.min_value >= -1e-9


def test_period_independent_of_coupling_strength():
    """Scaling every weight by 0.5 to 5 moves the period by less than 1%."""
    periods = [estimate_period(reference_run(0.5, scale), CFG).period_mean for scale in (0.5, 1.0, 2.0, 5.0)]
    assert (max(periods) - min(periods)) / min(periods) < 0.01


def test_uncoupled_oscillators_do_not_synchronize():
    """Without coupling the phases never lock."""
    g = GoodwinParams.uniform(0.5, 17)
    c = laplacian_from_weights(np.zeros((2, 2)))
    traj = integrate(g, c, default_initial_state(g, c, CFG), CFG)
    sync = measure_sync(traj, CFG)
    assert classify_oscillation(traj, CFG) is OscillationClass.OSCILLATORY
    assert not sync.synchronized
    # each oscillator is its own component
    assert set(sync.component_errors.values()) == {0.0}


def test_seed_does_not_change_period():
    """Different starts converge to the same limit cycle."""
    g = GoodwinParams.uniform(0.6, 17)
    c = ring_topology(3)
    periods = []
    for seed in (1, 2):
        cfg = SimConfig(seed=seed)
        periods.append(estimate_period(integrate(g, c, default_initial_state(g, c, cfg), cfg), cfg).period_mean)
    assert periods[0] == pytest.approx(periods[1], rel=0.005)


def test_step_size_does_not_change_period():
    """Halving dt moves the measured period by less than 0.1%."""
    g = GoodwinParams.uniform(0.5, 17)
    c = complete_topology(1)
    periods = []
    for dt in (0.01, 0.005):
        cfg = SimConfig(dt=dt)
        periods.append(estimate_period(integrate(g, c, default_initial_state(g, c, cfg), cfg), cfg).period_mean)
    assert periods[0] == pytest.approx(periods[1], rel=1e-3)


@pytest.mark.parametrize("b", [0.6, 0.7])
def test_harmonic_balance_amplitude_near_simulation(b):
    """Predicted first-harmonic amplitude is within 25% of the simulated one."""
    traj = reference_run(b)
    period = estimate_period(traj, CFG).period_mean
    measured = first_harmonic_amplitude(traj, period)
    predicted = solve_hb_amplitudes(GoodwinParams.uniform(b, 17)).beta
    assert predicted == pytest.approx(measured, rel=0.25)


def test_harmonic_balance_undershoots_near_onset():
    """At b = 0.5 the first-harmonic prediction sits about a third below the simulated amplitude."""
    traj = reference_run(0.5)
    period = estimate_period(traj, CFG).period_mean
    measured = first_harmonic_amplitude(traj, period)
    predicted = solve_hb_amplitudes(GoodwinParams.uniform(0.5, 17)).beta
    assert 0.6 <= predicted / measured <= 0.8
