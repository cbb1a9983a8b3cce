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
    dimensional_rhs,
    hill_derivative,
    hill_repression,
    laplacian_from_weights,
    network_rhs,
    ring_topology,
    table1_topology,
    to_dimensional_state,
    to_dimensionless_state,
    vector_field,
)
from src.model.params import DimensionalParams, GoodwinParams, nondimensionalize
from src.utils.errors import DimensionMismatchError, DomainError, InvalidTopologyError


def test_hill_repression_values():
    """f(0) = 1, f(1) = 1/2 for every p, f strictly decreasing on x > 0."""
    assert hill_repression(0.0, 17) == 1.0
    assert hill_repression(1.0, 17) == pytest.approx(0.5)
    assert hill_repression(1.0, 2) == pytest.approx(0.5)
    assert np.all(np.diff(hill_repression(np.linspace(0.2, 3, 50), 17)) < 0)
    assert np.all(np.diff(hill_repression(np.linspace(0.05, 3, 50), 2)) < 0)


def test_hill_repression_negative_input():
    """Negative concentrations are outside the domain."""
    with pytest.raises(DomainError):
        hill_repression(-0.1, 17)


def test_hill_derivative_matches_finite_difference():
    """Analytic slope agrees with a central difference."""
    x, p, h = 0.9, 17.0, 1e-6
    fd = (hill_repression(x + h, p) - hill_repression(x - h, p)) / (2 * h)
    assert hill_derivative(x, p) == pytest.approx(fd, rel=1e-6)


def test_laplacian_row_sums_and_symmetry():
    """Built Laplacian has zero row sums and mirrors the weights."""
    c = table1_topology()
    assert c.n == 9
    assert np.allclose(c.laplacian.sum(axis=1), 0.0)
    assert np.array_equal(c.laplacian, c.laplacian.T)
    assert c.laplacian[0, 1] == -0.3
    assert c.connected


def test_laplacian_two_nodes():
    """A single edge of weight 2."""
    c = laplacian_from_weights([[0, 2], [2, 0]])
    assert np.array_equal(c.laplacian, np.array([[2.0, -2.0], [-2.0, 2.0]]))


@pytest.mark.parametrize("weights", [
    [[0, 1], [0.5, 0]],
    [[0, -1], [-1, 0]],
    [[1, 1], [1, 0]],
    [[0, 1, 0], [1, 0, 1]],
])
def test_invalid_weights_rejected(weights):
    """Asymmetric, negative, self-coupled or non-square weights are invalid."""
    with pytest.raises(InvalidTopologyError):
        laplacian_from_weights(weights)


def test_disconnected_topology_flagged():
    """Two isolated pairs form two components."""
    w = np.zeros((4, 4))
    w[0, 1] = w[1, 0] = 1.0
    w[2, 3] = w[3, 2] = 1.0
    c = laplacian_from_weights(w)
    assert not c.connected
    assert c.components[0] == c.components[1]
    assert c.components[2] == c.components[3]
    assert c.components[0] != c.components[2]


def test_builtin_topologies():
    """Complete and ring graphs are connected with the right degrees."""
    k5 = complete_topology(5, 0.5)
    assert np.allclose(np.diag(k5.laplacian), 2.0)
    ring = ring_topology(6)
    assert ring.connected
    assert np.allclose(np.diag(ring.laplacian), 2.0)
    assert complete_topology(1).connected


def test_scaled_topology():
    """scaled() multiplies every weight."""
    c = table1_topology().scaled(2.0)
    assert c.weights[0, 1] == pytest.approx(0.6)
    with pytest.raises(InvalidTopologyError):
        table1_topology().scaled(-1.0)


def test_vector_field_vanishes_at_equilibrium():
    """The consensus equilibrium is a fixed point of the network."""
    g = GoodwinParams.uniform(0.5, 17)
    e = solve_equilibrium(g)
    c = table1_topology()
    s = NetworkState.consensus(c.n, e.x1_star, e.x2_star, e.x0)
    ds = vector_field(s, g, c)
    assert np.max(np.abs(ds.to_array())) < 1e-10


def test_coupling_cancels_at_consensus():
    """Diffusive terms are exactly zero when every x2 is equal."""
    g = GoodwinParams.uniform(0.5, 17)
    c = table1_topology()
    s = NetworkState.consensus(c.n, 0.3, 0.7, 1.1)
    ds = vector_field(s, g, c)
    assert np.all(ds.x2 == ds.x2[0])
    assert ds.x2[0] == 0.3 - 0.5 * 0.7


def test_vector_field_dimension_mismatch():
    """A 3-oscillator state on a 9-node topology is rejected."""
    g = GoodwinParams.uniform(0.5, 17)
    s = NetworkState.consensus(3, 1.0, 1.0, 1.0)
    with pytest.raises(DimensionMismatchError):
        vector_field(s, g, table1_topology())


def test_dimensional_rhs_matches_dimensionless_field():
    """Change of variables maps the original kinetics onto the scaled field."""
    d = DimensionalParams(v0=2.0, v1=0.7, v2=1.3, k1=0.4, k2=0.3, k3=0.5, Km=1.5, p=9)
    g = nondimensionalize(d)
    c = ring_topology(4, 0.8)
    rng = np.random.default_rng(3)
    dim_state = NetworkState.from_array(rng.uniform(0.1, 2.0, size=(3, 4)))
    scaled = to_dimensionless_state(dim_state, d)

    lhs = network_rhs(scaled.to_array(), g, np.array(c.weights))
    scales = scaled.to_array() / dim_state.to_array()
    rhs = d.time_scale * scales * dimensional_rhs(dim_state.to_array(), d, np.array(c.weights))
    assert np.allclose(lhs, rhs, rtol=1e-10, atol=1e-12)


def test_state_conversion_inverse():
    """to_dimensional_state undoes to_dimensionless_state."""
    d = DimensionalParams(v0=2.0, v1=0.7, v2=1.3, k1=0.4, k2=0.3, k3=0.5, Km=1.5, p=9)
    s = NetworkState(np.array([0.1, 0.2]), np.array([0.3, 0.4]), np.array([0.5, 0.6]))
    back = to_dimensional_state(to_dimensionless_state(s, d), d)
    assert np.allclose(back.to_array(), s.to_array())


def test_network_state_rejects_unequal_lengths():
    """x1, x2 and x3 must have one entry per oscillator."""
    with pytest.raises(DimensionMismatchError):
        NetworkState(np.ones(2), np.ones(3), np.ones(2))
