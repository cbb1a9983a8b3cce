"""Fixed-step fourth-order Runge-Kutta integration of the oscillator network."""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from src.analysis.equilibrium import solve_equilibrium
from src.model.network import (
    CouplingTopology,
    NetworkState,
    dimensional_rhs,
    network_rhs,
)
from src.model.params import DimensionalParams, GoodwinParams
from src.utils.errors import DimensionMismatchError, DivergenceError, InvalidParameterError


@dataclass(frozen=True)
class SimConfig:
    """Numerical settings of one integration run.

    Attributes:
        dt: Step size (dimensionless time).
        t_end: Horizon.
        transient_fraction: Leading share of the run discarded before measuring.
        seed: Seed of the initial perturbation.
        perturbation: Relative amplitude of the random offset from equilibrium.
        record_every: Keep every k-th step in the trajectory.
        sync_rtol: Sync tolerance relative to the oscillation amplitude.
        amplitude_rtol: Oscillation threshold relative to max(1, x0).
    """
    dt: float = 0.01
    t_end: float = 500.0
    transient_fraction: float = 0.5
    seed: int = 42
    perturbation: float = 0.5
    record_every: int = 1
    sync_rtol: float = 1e-3
    amplitude_rtol: float = 1e-3

    def __post_init__(self):
        if not self.dt > 0:
            raise InvalidParameterError(f"dt must be positive, got {self.dt}")
        if not self.t_end > 10 * self.dt:
            raise InvalidParameterError(f"t_end must exceed 10*dt, got t_end={self.t_end}, dt={self.dt}")
        if not 0 <= self.transient_fraction < 1:
            raise InvalidParameterError(f"transient_fraction must be in [0, 1), got {self.transient_fraction}")
        if self.seed < 0:
            raise InvalidParameterError(f"seed must be nonnegative, got {self.seed}")
        if self.perturbation < 0:
            raise InvalidParameterError(f"perturbation must be nonnegative, got {self.perturbation}")
        if self.record_every < 1:
            raise InvalidParameterError(f"record_every must be >= 1, got {self.record_every}")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))

    def as_dict(self) -> dict:
        return {"dt": self.dt, "t_end": self.t_end, "transient_fraction": self.transient_fraction,
                "seed": self.seed, "perturbation": self.perturbation, "record_every": self.record_every,
                "sync_rtol": self.sync_rtol, "amplitude_rtol": self.amplitude_rtol}


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled time evolution on a uniform grid.

    ``states`` has shape (samples, 3, n): rows x1, x2, x3 per sample.
    """
    times: np.ndarray
    states: np.ndarray
    params: Optional[object] = None
    topology: Optional[CouplingTopology] = None
    min_value: float = 0.0
    diverged_at: Optional[float] = None

    @property
    def n(self) -> int:
        return self.states.shape[2]

    @property
    def x1(self) -> np.ndarray:
        return self.states[:, 0, :]

    @property
    def x2(self) -> np.ndarray:
        return self.states[:, 1, :]

    @property
    def x3(self) -> np.ndarray:
        return self.states[:, 2, :]

    def state_at(self, k: int) -> NetworkState:
        return NetworkState.from_array(self.states[k])

    @classmethod
    def from_x3(cls, times, x3) -> "Trajectory":
        """Trajectory carrying only x3 samples (x1 = x2 = 0), for signal analysis."""
        x3 = np.asarray(x3, dtype=float)
        if x3.ndim == 1:
            x3 = x3[:, None]
        states = np.zeros((x3.shape[0], 3, x3.shape[1]))
        states[:, 2, :] = x3
        return cls(times=np.asarray(times, dtype=float), states=states, min_value=float(np.min(states)))


def _rk4(rhs: Callable[[np.ndarray], np.ndarray], y0: np.ndarray, dt: float, n_steps: int,
         stride: int, params, topology) -> Trajectory:
    samples = n_steps // stride + 1
    states = np.empty((samples,) + y0.shape)
    states[0] = y0
    y = y0.copy()
    half, sixth = 0.5 * dt, dt / 6.0
    min_value = float(np.min(y0))

    for k in range(1, n_steps + 1):
        k1 = rhs(y)
        k2 = rhs(y + half * k1)
        k3 = rhs(y + half * k2)
        k4 = rhs(y + dt * k3)
        y = y + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            kept = (k - 1) // stride + 1
            partial = Trajectory(times=np.arange(kept) * stride * dt, states=states[:kept].copy(),
                                 params=params, topology=topology, min_value=min_value,
                                 diverged_at=k * dt)
            raise DivergenceError(f"Non-finite state at t={k * dt:.6g}", time=k * dt, trajectory=partial)
        min_value = min(min_value, float(y.min()))
        if k % stride == 0:
            states[k // stride] = y

    return Trajectory(times=np.arange(samples) * stride * dt, states=states,
                      params=params, topology=topology, min_value=min_value)


def integrate(g: GoodwinParams, c: CouplingTopology, init: NetworkState, cfg: SimConfig) -> Trajectory:
    """
    Integrate the network from ``init`` over [0, cfg.t_end] with classical RK4.

    Raises:
        DimensionMismatchError: If ``init`` and ``c`` disagree on n.
        DivergenceError: On a non-finite state; carries the partial trajectory.
    """
    if init.n != c.n:
        raise DimensionMismatchError(f"Initial state has {init.n} oscillators, topology has {c.n}")
    weights = np.array(c.weights)

    def rhs(y):
        return network_rhs(y, g, weights)

    return _rk4(rhs, init.to_array(), cfg.dt, cfg.n_steps, cfg.record_every, g, c)


def integrate_dimensional(d: DimensionalParams, c: CouplingTopology, init: NetworkState,
                          cfg: SimConfig) -> Trajectory:
    """
    Integrate the original kinetics; ``cfg.dt`` and ``cfg.t_end`` are in
    dimensional time and ``init`` holds concentrations.
    """
    if init.n != c.n:
        raise DimensionMismatchError(f"Initial state has {init.n} oscillators, topology has {c.n}")
    weights = np.array(c.weights)

    def rhs(y):
        return dimensional_rhs(y, d, weights)

    return _rk4(rhs, init.to_array(), cfg.dt, cfg.n_steps, cfg.record_every, d, c)


def default_initial_state(g: GoodwinParams, c: CouplingTopology, cfg: SimConfig) -> NetworkState:
    """
    Equilibrium times (1 + u), u ~ U[-perturbation, perturbation] per
    component, drawn from a PCG64 generator seeded with ``cfg.seed``.
    """
    e = solve_equilibrium(g)
    base = np.array([e.x1_star, e.x2_star, e.x0])[:, None] * np.ones((3, c.n))
    if cfg.perturbation == 0:
        return NetworkState.from_array(base)
    rng = np.random.default_rng(cfg.seed)
    u = rng.uniform(-cfg.perturbation, cfg.perturbation, size=(3, c.n))
    return NetworkState.from_array(base * (1.0 + u))
