"""Repression function, coupling topology and the network vector field."""

from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.sparse.csgraph import breadth_first_order, connected_components

from src.model.params import DimensionalParams, GoodwinParams
from src.utils.errors import DimensionMismatchError, DomainError, InvalidTopologyError

ArrayLike = Union[float, np.ndarray]

# Coupling weights a_{i,j} of the nine-cell reference network (zero diagonal).
TABLE1_WEIGHTS = (
    (0.0, 0.3, 0.5, 0.0, 0.6, 0.2, 0.0, 0.7, 0.8),
    (0.3, 0.0, 0.7, 0.2, 0.1, 0.8, 0.3, 0.1, 0.5),
    (0.5, 0.7, 0.0, 0.3, 0.6, 0.2, 0.6, 0.0, 0.8),
    (0.0, 0.2, 0.3, 0.0, 0.4, 0.6, 0.2, 0.9, 0.1),
    (0.6, 0.1, 0.6, 0.4, 0.0, 0.2, 0.7, 0.3, 0.8),
    (0.2, 0.8, 0.2, 0.6, 0.2, 0.0, 0.1, 0.9, 0.3),
    (0.0, 0.3, 0.6, 0.2, 0.7, 0.1, 0.0, 0.4, 0.5),
    (0.7, 0.1, 0.0, 0.9, 0.3, 0.9, 0.4, 0.0, 0.8),
    (0.8, 0.5, 0.8, 0.1, 0.8, 0.3, 0.5, 0.8, 0.0),
)

# Algebraic connectivity quoted alongside the table; the one-decimal weights
# above give 2.39805.
TABLE1_REPORTED_CONNECTIVITY = 2.4583


def hill_repression(x: ArrayLike, p: float) -> ArrayLike:
    """
    Repression function f(x) = 1 / (1 + x^p).

    Raises:
        DomainError: If any x is negative.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("hill_repression is only defined for x >= 0")
    out = 1.0 / (1.0 + np.power(x, p))
    return float(out) if out.ndim == 0 else out


def hill_derivative(x: ArrayLike, p: float) -> ArrayLike:
    """Derivative f'(x) = -p x^(p-1) / (1 + x^p)^2 (x >= 0)."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("hill_derivative is only defined for x >= 0")
    out = -p * np.power(x, p - 1) / (1.0 + np.power(x, p)) ** 2
    return float(out) if out.ndim == 0 else out


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class CouplingTopology:
    """Symmetric coupling weights and the derived graph Laplacian.

    Build instances with :func:`laplacian_from_weights`.
    """
    weights: np.ndarray
    laplacian: np.ndarray
    connected: bool
    components: tuple = field(default=())

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def scaled(self, factor: float) -> "CouplingTopology":
        """Topology with every weight multiplied by ``factor`` (>= 0)."""
        if factor < 0:
            raise InvalidTopologyError(f"Coupling scale must be nonnegative, got {factor}")
        return laplacian_from_weights(self.weights * factor)

    def as_dict(self) -> dict:
        return {"n": self.n, "weights": self.weights.tolist(), "connected": self.connected}


def laplacian_from_weights(weights) -> CouplingTopology:
    """
    Build a CouplingTopology from a symmetric weight matrix.

    Args:
        weights: n x n array-like, symmetric, nonnegative, zero diagonal.

    Returns:
        CouplingTopology with A[i][i] = sum_j a_ij, A[i][j] = -a_ij and a
        connectivity flag from breadth-first reachability over nonzero weights.

    Raises:
        InvalidTopologyError: On a non-square, asymmetric, negative,
            non-finite or nonzero-diagonal weight matrix.
    """
    w = np.array(weights, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] == 0:
        raise InvalidTopologyError(f"Weights must be a non-empty square matrix, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise InvalidTopologyError("Weights must be finite")
    if np.any(w < 0):
        raise InvalidTopologyError("Weights must be nonnegative")
    if np.any(np.diag(w) != 0):
        raise InvalidTopologyError("Weights must have a zero diagonal")
    if not np.array_equal(w, w.T):
        raise InvalidTopologyError("Weights must be symmetric (bidirectional coupling)")

    lap = -w.copy()
    np.fill_diagonal(lap, w.sum(axis=1))

    adjacency = (w > 0).astype(float)
    reached = breadth_first_order(adjacency, 0, directed=False, return_predecessors=False)
    _, labels = connected_components(adjacency, directed=False)

    return CouplingTopology(
        weights=_frozen(w),
        laplacian=_frozen(lap),
        connected=bool(len(reached) == w.shape[0]),
        components=tuple(int(label) for label in labels),
    )


def table1_topology() -> CouplingTopology:
    """The nine-cell reference network."""
    return laplacian_from_weights(TABLE1_WEIGHTS)


def complete_topology(n: int, weight: float = 1.0) -> CouplingTopology:
    """All-to-all coupling with uniform weight."""
    if n < 1:
        raise InvalidTopologyError(f"n must be >= 1, got {n}")
    w = np.full((n, n), float(weight))
    np.fill_diagonal(w, 0.0)
    return laplacian_from_weights(w)


def ring_topology(n: int, weight: float = 1.0) -> CouplingTopology:
    """Nearest-neighbour ring with uniform weight."""
    if n < 1:
        raise InvalidTopologyError(f"n must be >= 1, got {n}")
    w = np.zeros((n, n))
    if n > 1:
        for i in range(n):
            j = (i + 1) % n
            if i != j:
                w[i, j] = w[j, i] = float(weight)
    return laplacian_from_weights(w)


@dataclass(frozen=True, eq=False)
class NetworkState:
    """Concentrations x1, x2, x3 of every oscillator (length-n vectors)."""
    x1: np.ndarray
    x2: np.ndarray
    x3: np.ndarray

    def __post_init__(self):
        arrays = [_frozen(np.atleast_1d(v)) for v in (self.x1, self.x2, self.x3)]
        if len({a.shape for a in arrays}) != 1 or arrays[0].ndim != 1:
            raise DimensionMismatchError("x1, x2 and x3 must be vectors of equal length")
        if not all(np.all(np.isfinite(a)) for a in arrays):
            raise ValueError("NetworkState entries must be finite")
        for name, a in zip(("x1", "x2", "x3"), arrays):
            object.__setattr__(self, name, a)

    @property
    def n(self) -> int:
        return self.x1.shape[0]

    def to_array(self) -> np.ndarray:
        """Stacked (3, n) array."""
        return np.vstack([self.x1, self.x2, self.x3])

    @classmethod
    def from_array(cls, y) -> "NetworkState":
        y = np.asarray(y, dtype=float)
        return cls(y[0], y[1], y[2])

    @classmethod
    def consensus(cls, n: int, x1: float, x2: float, x3: float) -> "NetworkState":
        """Every oscillator in the same state."""
        return cls(np.full(n, x1), np.full(n, x2), np.full(n, x3))


def network_rhs(y: np.ndarray, g: GoodwinParams, weights: np.ndarray) -> np.ndarray:
    """
    Vector field on a stacked (3, n) state array.

    The coupling is summed as a_ij (x2_i - x2_j) so it vanishes exactly at
    consensus. The argument of f is clamped at 0; stored states are not modified.
    """
    x1, x2, x3 = y
    dy = np.empty_like(y)
    dy[0] = 1.0 / (1.0 + np.power(np.maximum(x3, 0.0), g.p)) - g.b1 * x1
    dy[1] = x1 - g.b2 * x2 - (weights * (x2[:, None] - x2[None, :])).sum(axis=1)
    dy[2] = x2 - g.b3 * x3
    return dy


def vector_field(s: NetworkState, g: GoodwinParams, c: CouplingTopology) -> NetworkState:
    """
    Time derivative of the diffusively coupled network.

    dx1_i = f(x3_i) - b1 x1_i
    dx2_i = x1_i - b2 x2_i - sum_j a_ij (x2_i - x2_j)
    dx3_i = x2_i - b3 x3_i

    Raises:
        DimensionMismatchError: If the state and topology sizes differ.
    """
    if s.n != c.n:
        raise DimensionMismatchError(f"State has {s.n} oscillators, topology has {c.n}")
    return NetworkState.from_array(network_rhs(s.to_array(), g, c.weights))


def dimensional_rhs(y: np.ndarray, d: DimensionalParams, weights: np.ndarray) -> np.ndarray:
    """
    Original kinetics on concentrations [X1], [X2], [X3] in dimensional time.

    Coupling weights are rates per unit of dimensionless time, so they act as
    a_ij / sigma here.
    """
    X1, X2, X3 = y
    rate = 1.0 / d.time_scale
    dy = np.empty_like(y)
    dy[0] = d.v0 / (1.0 + np.power(np.maximum(X3, 0.0) / d.Km, d.p)) - d.k1 * X1
    dy[1] = d.v1 * X1 - d.k2 * X2 - rate * (weights * (X2[:, None] - X2[None, :])).sum(axis=1)
    dy[2] = d.v2 * X2 - d.k3 * X3
    return dy


def _state_scales(d: DimensionalParams) -> np.ndarray:
    sigma = d.time_scale
    return np.array([sigma ** 2 * d.v1 * d.v2 / d.Km, sigma * d.v2 / d.Km, 1.0 / d.Km])


def to_dimensionless_state(s: NetworkState, d: DimensionalParams) -> NetworkState:
    """x1 = sigma^2 v1 v2 [X1]/Km, x2 = sigma v2 [X2]/Km, x3 = [X3]/Km."""
    return NetworkState.from_array(s.to_array() * _state_scales(d)[:, None])


def to_dimensional_state(s: NetworkState, d: DimensionalParams) -> NetworkState:
    """Inverse of :func:`to_dimensionless_state`."""
    return NetworkState.from_array(s.to_array() / _state_scales(d)[:, None])
