import os
import sys

import numpy as np
import pytest

# Add project root to path so we can import src
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '../../..')))

from src.analysis.equilibrium import solve_equilibrium
from src.model.network import (
    NetworkState,
    complete_topology,
    ring_topology,
    table1_topology,
    to_dimensional_state,
    to_dimensionless_state,
)
from src.model.params import DimensionalParams, GoodwinParams, nondimensionalize
from src.simulation.integrator import SimConfig, default_initial_state, integrate, integrate_dimensional
from src.utils.errors import DimensionMismatchError, DivergenceError, InvalidParameterError


@pytest.mark.parametrize("kwargs", [
    {"dt": 0.0},
    {"dt": -0.01},
    {"dt": 0.1, "t_end": 1.0},
    {"transient_fraction": 1.0},
    {"transient_fraction": -0.1},
    {"perturbation": -0.5},
    {"record_every": 0},
])
def test_sim_config_validation(kwargs):
    """Invalid numerical settings are configuration errors."""
    with pytest.raises(InvalidParameterError):
        SimConfig(**kwargs)


def test_sim_config_defaults():
    """Defaults give 50000 steps."""
    cfg = SimConfig()
    assert (cfg.dt, cfg.t_end, cfg.transient_fraction, cfg.seed, cfg.perturbation) == (0.01, 500.0, 0.5, 42, 0.5)
    assert cfg.n_steps == 50_000


def test_equilibrium_start_stays_constant():
    """The (stable) consensus equilibrium does not drift."""
    g = GoodwinParams.uniform(1.0, 17)
    c = table1_topology()
    cfg = SimConfig(t_end=100.0, perturbation=0.0)
    init = default_initial_state(g, c, cfg)
    traj = integrate(g, c, init, cfg)
    drift = np.max(np.abs(traj.states - traj.states[0]))
    assert drift < 1e-10
    assert traj.times[-1] == pytest.approx(100.0)
    assert traj.states.shape == (10_001, 3, 9)


def test_single_quiescent_oscillator_settles():
    """b = 1 lies below the oscillation threshold: the swing dies out."""
    g = GoodwinParams.uniform(1.0, 17)
    c = complete_topology(1)
    cfg = SimConfig()
    traj = integrate(g, c, default_initial_state(g, c, cfg), cfg)
    tail = traj.x3[-5000:, 0]
    assert np.ptp(tail) < 1e-4


def test_default_initial_state_exact_equilibrium():
    """perturbation = 0 gives the equilibrium itself."""
    g = GoodwinParams.uniform(0.6, 17)
    c = ring_topology(4)
    e = solve_equilibrium(g)
    s = default_initial_state(g, c, SimConfig(perturbation=0.0))
    assert np.all(s.x3 == e.x0)
    assert np.all(s.x2 == e.x2_star)
    assert np.all(s.x1 == e.x1_star)


def test_default_initial_state_reproducible():
    """Same seed gives identical states, another seed does not."""
    g = GoodwinParams.uniform(0.6, 17)
    c = table1_topology()
    a = default_initial_state(g, c, SimConfig(seed=1))
    b = default_initial_state(g, c, SimConfig(seed=1))
    other = default_initial_state(g, c, SimConfig(seed=2))
    assert np.array_equal(a.to_array(), b.to_array())
    assert not np.array_equal(a.to_array(), other.to_array())


def test_default_initial_state_bounds():
    """Every component stays within the relative perturbation band."""
    g = GoodwinParams.uniform(0.6, 17)
    c = table1_topology()
    e = solve_equilibrium(g)
    s = default_initial_state(g, c, SimConfig(perturbation=0.2))
    assert np.all(np.abs(s.x3 / e.x0 - 1) <= 0.2)
    assert np.all(s.to_array() > 0)


def test_integration_deterministic():
    """Two runs with the same inputs are bit-identical."""
    g = GoodwinParams.uniform(0.5, 17)
    c = table1_topology()
    cfg = SimConfig(t_end=20.0)
    init = default_initial_state(g, c, cfg)
    first = integrate(g, c, init, cfg)
    second = integrate(g, c, init, cfg)
    assert np.array_equal(first.states, second.states)


def test_step_halving_convergence():
    """Halving dt moves the trajectory by less than 1e-6 in sup-norm."""
    g = GoodwinParams.uniform(0.5, 17)
    c = table1_topology()
    cfg = SimConfig(t_end=100.0)
    init = default_initial_state(g, c, cfg)
    coarse = integrate(g, c, init, cfg)
    fine = integrate(g, c, init, SimConfig(dt=0.005, t_end=100.0, record_every=2))
    assert coarse.states.shape == fine.states.shape
    assert np.allclose(coarse.times, fine.times)
    assert np.max(np.abs(coarse.states - fine.states)) < 1e-6


def test_identical_nodes_stay_synchronized():
    """Diffusive terms cancel exactly when all nodes start together."""
    g = GoodwinParams.uniform(0.5, 17)
    c = table1_topology()
    cfg = SimConfig(t_end=50.0)
    traj = integrate(g, c, NetworkState.consensus(c.n, 0.2, 0.3, 0.5), cfg)
    spread = traj.x3.max(axis=1) - traj.x3.min(axis=1)
    assert spread.max() < 1e-10


def test_states_stay_nonnegative():
    """Nonnegative starts never produce negative samples."""
    g = GoodwinParams.uniform(0.4, 17)
    c = table1_topology()
    cfg = SimConfig(t_end=100.0)
    traj = integrate(g, c, default_initial_state(g, c, cfg), cfg)
    assert traj.min_value >= -1e-9


def test_record_every_thins_samples():
    """record_every = 10 keeps one sample in ten."""
    g = GoodwinParams.uniform(0.5, 17)
    c = complete_topology(2)
    cfg = SimConfig(t_end=10.0, record_every=10)
    traj = integrate(g, c, default_initial_state(g, c, cfg), cfg)
    assert len(traj.times) == 101
    assert traj.times[1] == pytest.approx(0.1)


def test_dimension_mismatch_rejected():
    """Initial state and topology must agree on n."""
    g = GoodwinParams.uniform(0.5, 17)
    with pytest.raises(DimensionMismatchError):
        integrate(g, table1_topology(), NetworkState.consensus(3, 1.0, 1.0, 1.0), SimConfig(t_end=1.0))


def test_divergence_reports_time_and_partial_trajectory():
    """A step far beyond the stability region overflows and aborts."""
    g = GoodwinParams.uniform(0.5, 17)
    c = complete_topology(2)
    cfg = SimConfig(dt=1000.0, t_end=1e6)
    with np.errstate(all="ignore"):
        with pytest.raises(DivergenceError) as excinfo:
            integrate(g, c, default_initial_state(g, c, cfg), cfg)
    exc = excinfo.value
    assert exc.time > 0
    assert exc.trajectory is not None
    assert exc.trajectory.diverged_at == exc.time
    assert np.all(np.isfinite(exc.trajectory.states))
    assert exc.trajectory.times[-1] < exc.time


def test_dimensional_integration_matches_dimensionless():
    """The original kinetics in dimensional time trace the same orbit."""
    d = DimensionalParams(v0=1.0, v1=1.0, v2=1.0, k1=0.25, k2=0.25, k3=0.25, Km=8.0, p=17)
    g = nondimensionalize(d)
    assert g.b == pytest.approx((0.5, 0.5, 0.5))
    c = ring_topology(3, 0.4)
    cfg = SimConfig(t_end=100.0)
    init = default_initial_state(g, c, cfg)

    scaled = integrate(g, c, init, cfg)
    sigma = d.time_scale
    original = integrate_dimensional(d, c, to_dimensional_state(init, d),
                                     SimConfig(dt=cfg.dt * sigma, t_end=cfg.t_end * sigma))
    back = to_dimensionless_state(original.state_at(-1), d)
    assert np.allclose(back.to_array(), scaled.states[-1], atol=1e-8)
