import os
import sys

import pytest

# Add project root to path so we can import src
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '../../..')))

from src.utils import errors


@pytest.mark.parametrize("cls", [
    errors.ConfigError,
    errors.InvalidParameterError,
    errors.InvalidTopologyError,
])
def test_configuration_errors_exit_2(cls):
    assert cls("x").exit_code == errors.EXIT_CONFIG_ERROR == 2
    assert issubclass(cls, ValueError)


@pytest.mark.parametrize("cls", [
    errors.DomainError,
    errors.DimensionMismatchError,
    errors.PreconditionError,
    errors.DisconnectedTopologyError,
    errors.NotOscillatoryError,
    errors.InvalidBundleError,
])
def test_numerical_errors_exit_3(cls):
    assert cls("x").exit_code == errors.EXIT_NUMERICAL_FAILURE == 3


def test_divergence_error_carries_time():
    exc = errors.DivergenceError("blew up", time=12.5)
    assert exc.time == 12.5 and exc.trajectory is None
    assert exc.exit_code == 3


def test_balance_error_carries_residuals():
    exc = errors.NoBalanceSolutionError("no root", residuals=[0.1, 0.2], iterations=50)
    assert exc.iterations == 50
    assert isinstance(exc, errors.GoodwinNetError)
