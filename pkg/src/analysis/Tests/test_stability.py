import os
import sys

import numpy as np
import pytest

# Add project root to path so we can import src
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '../../..')))

from src.analysis.equilibrium import linearization_gain, solve_equilibrium
from src.analysis.spectral import spectral_decompose
from src.analysis.stability import (
    StabilityClass,
    cubic_roots,
    mode_cubic,
    mode_pole_polynomials,
    routh_hurwitz_cubic,
    verify_marginal_stability,
)
from src.model.network import laplacian_from_weights, table1_topology
from src.model.params import GoodwinParams
from src.utils.errors import DisconnectedTopologyError, PreconditionError


@pytest.mark.parametrize("coefficients,expected", [
    ((3.0, 3.0, 1.0), StabilityClass.STRICTLY_STABLE),   # (s+1)^3
    ((1.0, 1.0, 1.0), StabilityClass.MARGINAL),          # (s+1)(s^2+1)
    ((3.0, 2.0, 0.0), StabilityClass.MARGINAL),          # s(s+1)(s+2)
    ((1.0, 1.0, 2.0), StabilityClass.UNSTABLE),
    ((-1.0, 1.0, 1.0), StabilityClass.UNSTABLE),
    ((3.0, 3.0, -1.0), StabilityClass.UNSTABLE),
])
def test_routh_hurwitz_cubic(coefficients, expected):
    """Classification of monic cubics with known roots."""
    assert routh_hurwitz_cubic(*coefficients) is expected


def test_cubic_roots_sorted():
    """Roots of (s+1)(s+2)(s+3) come back in ascending real part."""
    roots = cubic_roots(6.0, 11.0, 6.0)
    assert np.allclose(roots.real, [-3.0, -2.0, -1.0])
    assert np.allclose(roots.imag, 0.0)


def test_mode_cubic_coefficients():
    """(s+b1)(s+b2+u)(s+b3) - kappa expanded."""
    g = GoodwinParams(0.5, 0.6, 0.7, 17)
    c2, c1, c0 = mode_cubic(g, 0.1, 0.2)
    assert c2 == pytest.approx(0.5 + 0.8 + 0.7)
    assert c1 == pytest.approx(0.5 * 0.8 + 0.5 * 0.7 + 0.8 * 0.7)
    assert c0 == pytest.approx(0.5 * 0.8 * 0.7 - 0.1)


def test_mode_pole_polynomials_cover_every_mode():
    """One cubic per Laplacian eigenvalue."""
    g = GoodwinParams.uniform(0.5, 17)
    d = spectral_decompose(table1_topology())
    cubics = mode_pole_polynomials(g, 0.1, d)
    assert len(cubics) == 9
    assert cubics[0] == mode_cubic(g, 0.1)
    assert len(mode_pole_polynomials(g, 0.1)) == 1


@pytest.mark.parametrize("b", [
    (0.4, 0.4, 0.4),
    (0.5, 0.5, 0.5),
    (0.6, 0.6, 0.6),
    (0.7, 0.7, 0.7),
    (0.7, 0.8, 0.9),
])
def test_marginal_stability_of_critical_gains(b):
    """G0 has one root at 0, G1 a pair at +-jw, everything else is stable."""
    g = GoodwinParams(*b, 17)
    report = verify_marginal_stability(g, spectral_decompose(table1_topology()))
    assert report.ok, report.violations
    w = np.sqrt(g.pair_sum)
    assert min(abs(r) for r in report.g0_mode1_roots) < 1e-7
    assert min(abs(r - 1j * w) for r in report.g1_mode1_roots) < 1e-7
    assert min(abs(r + 1j * w) for r in report.g1_mode1_roots) < 1e-7
    assert report.g0_mode1_class is StabilityClass.MARGINAL
    assert report.g1_mode1_class is StabilityClass.MARGINAL


def test_marginal_stability_requires_oscillation():
    """R <= 1 leaves nothing to check."""
    g = GoodwinParams.uniform(0.9, 17)
    with pytest.raises(PreconditionError):
        verify_marginal_stability(g, spectral_decompose(table1_topology()))


def test_marginal_stability_requires_connected_topology():
    """A disconnected network has a second zero mode."""
    g = GoodwinParams.uniform(0.5, 17)
    d = spectral_decompose(laplacian_from_weights(np.zeros((3, 3))))
    with pytest.raises(DisconnectedTopologyError):
        verify_marginal_stability(g, d)


def test_stable_consensus_mode_damps_every_other_mode():
    """A strictly stable mode-1 cubic stays strictly stable for every upsilon > 0."""
    rng = np.random.default_rng(2024)
    checked = 0
    for _ in range(500):
        g = GoodwinParams(*rng.uniform(0.1, 2.0, size=3), rng.uniform(2.0, 25.0))
        sigma = linearization_gain(g, solve_equilibrium(g))
        if routh_hurwitz_cubic(*mode_cubic(g, sigma)) is not StabilityClass.STRICTLY_STABLE:
            continue
        checked += 1
        for upsilon in rng.uniform(1e-3, 20.0, size=5):
            assert routh_hurwitz_cubic(*mode_cubic(g, sigma, upsilon)) is StabilityClass.STRICTLY_STABLE
    assert checked > 50
