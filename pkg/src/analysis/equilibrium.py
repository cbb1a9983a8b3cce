"""Equilibrium, linearization and the oscillation/synchronization conditions."""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import bisect
from scipy.special import expit

from src.model.params import GoodwinParams
from src.utils.errors import DisconnectedTopologyError, PreconditionError

EQUILIBRIUM_RTOL = 1e-14


class EquilibriumConvention(str, Enum):
    """
    Which equation defines x0.

    STANDARD solves f(x0) = b1 b2 b3 x0, the actual fixed point of the network.
    SHIFTED solves 1 / (1 + x0^(p+1)) = b1 b2 b3 x0, the convention under which
    the reference oscillation indices were tabulated.
    """
    STANDARD = "standard"
    SHIFTED = "shifted"


@dataclass(frozen=True)
class EquilibriumPoint:
    """Common equilibrium of every oscillator."""
    x0: float
    x1_star: float
    x2_star: float
    residual: float
    convention: EquilibriumConvention = EquilibriumConvention.STANDARD

    def as_dict(self) -> dict:
        return {"x0": self.x0, "x1_star": self.x1_star, "x2_star": self.x2_star,
                "residual": self.residual, "convention": self.convention.value}


def _exponent(g: GoodwinParams, convention: EquilibriumConvention) -> float:
    return g.p + 1 if EquilibriumConvention(convention) is EquilibriumConvention.SHIFTED else g.p


def solve_equilibrium(g: GoodwinParams,
                      convention: EquilibriumConvention = EquilibriumConvention.STANDARD) -> EquilibriumPoint:
    """
    Unique positive root of h(x) = 1/(1+x^q) - b1 b2 b3 x by bisection.

    h is strictly decreasing with h(0) = 1 > 0 and h(1/(b1 b2 b3)) <= 0, so
    the bracket (0, 1/(b1 b2 b3)] always holds the root.
    """
    convention = EquilibriumConvention(convention)
    q = _exponent(g, convention)
    b = g.product

    def h(x):
        if x <= 0.0:
            return 1.0
        # 1/(1+x^q) in log space; x^q overflows for large brackets
        return float(expit(-q * np.log(x))) - b * x

    upper = 1.0 / b
    if h(upper) == 0.0:
        x0 = upper
    else:
        x0 = bisect(h, 0.0, upper, xtol=1e-300, rtol=EQUILIBRIUM_RTOL, maxiter=2000)
    return EquilibriumPoint(
        x0=float(x0),
        x1_star=g.b2 * g.b3 * x0,
        x2_star=g.b3 * x0,
        residual=abs(h(x0)),
        convention=convention,
    )


def linearization_gain(g: GoodwinParams, e: EquilibriumPoint) -> float:
    """sigma = -p x0^(p-1) (b1 b2 b3 x0)^2, the slope of f at the equilibrium."""
    return -g.p * e.x0 ** (g.p - 1) * (g.product * e.x0) ** 2


def routh_denominator(g: GoodwinParams) -> float:
    """(b1+b2+b3)(b1b2+b2b3+b1b3) - b1b2b3, positive for positive rates."""
    return g.total * g.pair_sum - g.product


def oscillation_index(g: GoodwinParams, e: EquilibriumPoint) -> float:
    """
    R = p (b1 b2 b3)^2 x0^(p+1) / ((b1+b2+b3)(b1b2+b2b3+b1b3) - b1b2b3).

    R > 1 is the oscillation condition.
    """
    denominator = routh_denominator(g)
    if denominator <= 0:
        raise PreconditionError(f"Routh denominator must be positive, got {denominator}")
    return g.p * g.product ** 2 * e.x0 ** (g.p + 1) / denominator


def instability_verdict(g: GoodwinParams, sigma: float) -> bool:
    """sigma < b1b2b3 - (b1+b2+b3)(b1b2+b1b3+b2b3), equivalent to R > 1."""
    return sigma < g.product - g.total * g.pair_sum


def gamma_max_slope(p: float) -> float:
    """
    gamma = max_{x >= 0} p x^(p-1) / (1 + x^p)^2.

    Attained at x* = ((p-1)/(p+1))^(1/p) for p > 1 and at x = 0 for p = 1.

    Raises:
        PreconditionError: For p < 1, where the slope is unbounded near 0.
    """
    if p < 1:
        raise PreconditionError(f"gamma is unbounded for p < 1 (got p={p})")
    if p == 1:
        return 1.0
    ratio = (p - 1) / (p + 1)
    return ratio ** ((p - 1) / p) * (p + 1) ** 2 / (4 * p)


def gamma_argmax(p: float) -> float:
    """Maximizer of the slope of f (0 for p = 1)."""
    if p < 1:
        raise PreconditionError(f"gamma is unbounded for p < 1 (got p={p})")
    return 0.0 if p == 1 else ((p - 1) / (p + 1)) ** (1 / p)


@dataclass(frozen=True)
class SyncCondition:
    """Outcome of the sufficient synchronization test rho > -b1 + gamma/(4 b2 b3)."""
    rho: float
    gamma: float
    threshold: float
    satisfied: bool
    sufficient_only: bool = True

    def as_dict(self) -> dict:
        return {"rho": self.rho, "gamma": self.gamma, "threshold": self.threshold,
                "satisfied": self.satisfied, "sufficient_only": self.sufficient_only}


def sync_threshold(g: GoodwinParams, gamma: float) -> float:
    return -g.b1 + gamma / (4 * g.b2 * g.b3)


def check_sync_condition(g: GoodwinParams, gamma: float, rho: float, connected: bool = True) -> SyncCondition:
    """
    Evaluate the synchronization condition.

    The condition is sufficient, not necessary: networks that fail it may
    still synchronize.

    Raises:
        DisconnectedTopologyError: If the topology is disconnected.
    """
    if not connected or not np.isfinite(rho) or rho <= 0:
        raise DisconnectedTopologyError("Synchronization condition requires a connected topology")
    threshold = sync_threshold(g, gamma)
    return SyncCondition(rho=rho, gamma=gamma, threshold=threshold, satisfied=bool(rho > threshold))
