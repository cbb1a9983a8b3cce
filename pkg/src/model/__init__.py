"""Parameter records, coupling topologies and the network vector field."""

from .params import DimensionalParams, GoodwinParams, nondimensionalize
from .network import (
    TABLE1_REPORTED_CONNECTIVITY,
    TABLE1_WEIGHTS,
    CouplingTopology,
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

__all__ = [
    'DimensionalParams',
    'GoodwinParams',
    'nondimensionalize',
    'TABLE1_REPORTED_CONNECTIVITY',
    'TABLE1_WEIGHTS',
    'CouplingTopology',
    'NetworkState',
    'complete_topology',
    'dimensional_rhs',
    'hill_derivative',
    'hill_repression',
    'laplacian_from_weights',
    'network_rhs',
    'ring_topology',
    'table1_topology',
    'to_dimensional_state',
    'to_dimensionless_state',
    'vector_field',
]
