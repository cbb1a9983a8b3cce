"""Modal cubics, the Routh-Hurwitz test and marginal-stability checks."""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from src.analysis.equilibrium import linearization_gain, oscillation_index, solve_equilibrium
from src.analysis.spectral import SpectralDecomposition
from src.model.params import GoodwinParams
from src.utils.errors import DisconnectedTopologyError, PreconditionError

BOUNDARY_TOL = 1e-9
ROOT_TOL = 1e-7

Cubic = Tuple[float, float, float]


class StabilityClass(str, Enum):
    STRICTLY_STABLE = "strictly-stable"
    MARGINAL = "marginal"
    UNSTABLE = "unstable"


def mode_cubic(g: GoodwinParams, kappa: float, upsilon: float = 0.0) -> Cubic:
    """
    Coefficients (c2, c1, c0) of (s+b1)(s+b2+upsilon)(s+b3) - kappa.
    """
    b1, b2, b3 = g.b1, g.b2 + upsilon, g.b3
    return (b1 + b2 + b3, b1 * b2 + b1 * b3 + b2 * b3, b1 * b2 * b3 - kappa)


def mode_pole_polynomials(g: GoodwinParams, kappa: float,
                          decomposition: Optional[SpectralDecomposition] = None) -> List[Cubic]:
    """
    Pole polynomials of every Laplacian mode with loop gain kappa.

    Mode 1 (consensus) uses b2; mode j >= 2 uses b2 + upsilon_j. Without a
    decomposition only mode 1 is returned.
    """
    cubics = [mode_cubic(g, kappa)]
    if decomposition is not None:
        cubics.extend(mode_cubic(g, kappa, float(u)) for u in decomposition.eigenvalues[1:])
    return cubics


def routh_hurwitz_cubic(c2: float, c1: float, c0: float, tol: float = BOUNDARY_TOL) -> StabilityClass:
    """
    Classify s^3 + c2 s^2 + c1 s + c0.

    Strictly stable iff c2 > 0, c0 > 0 and c2 c1 > c0. Marginal when one of
    the boundary equalities (c0 = 0 or c2 c1 = c0) holds within ``tol`` and
    nothing is violated beyond it.
    """
    hurwitz = c2 * c1 - c0
    if c2 > tol and c0 > tol and hurwitz > tol:
        return StabilityClass.STRICTLY_STABLE
    no_violation = c2 > tol and c1 >= -tol and c0 >= -tol and hurwitz >= -tol
    on_boundary = abs(c0) <= tol or abs(hurwitz) <= tol
    if no_violation and on_boundary:
        return StabilityClass.MARGINAL
    return StabilityClass.UNSTABLE


def cubic_roots(c2: float, c1: float, c0: float) -> np.ndarray:
    """Roots of the monic cubic (companion-matrix eigenvalues), sorted by real part."""
    roots = np.roots([1.0, c2, c1, c0])
    return roots[np.lexsort((roots.imag, roots.real))]


@dataclass
class MarginalStabilityReport:
    """Pole locations of the gain-substituted loops G0 (kappa = xi*) and G1 (kappa = eta*)."""
    w: float
    g0_mode1_roots: List[complex]
    g1_mode1_roots: List[complex]
    g0_mode1_class: StabilityClass
    g1_mode1_class: StabilityClass
    g0_zero_root: bool
    g0_rest_stable: bool
    g1_imaginary_pair: bool
    g1_third_stable: bool
    g0_modes_stable: bool
    g1_modes_stable: bool
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        def pack(roots):
            return [[float(np.real(r)), float(np.imag(r))] for r in roots]
        return {
            "ok": self.ok,
            "w": self.w,
            "g0_mode1_roots": pack(self.g0_mode1_roots),
            "g1_mode1_roots": pack(self.g1_mode1_roots),
            "g0_mode1_class": self.g0_mode1_class.value,
            "g1_mode1_class": self.g1_mode1_class.value,
            "g0_zero_root": self.g0_zero_root,
            "g0_rest_stable": self.g0_rest_stable,
            "g1_imaginary_pair": self.g1_imaginary_pair,
            "g1_third_stable": self.g1_third_stable,
            "g0_modes_stable": self.g0_modes_stable,
            "g1_modes_stable": self.g1_modes_stable,
            "violations": list(self.violations),
        }


def _modes_strictly_stable(cubics: List[Cubic]) -> bool:
    for c2, c1, c0 in cubics:
        if routh_hurwitz_cubic(c2, c1, c0) is not StabilityClass.STRICTLY_STABLE:
            return False
        if np.max(cubic_roots(c2, c1, c0).real) >= -BOUNDARY_TOL:
            return False
    return True


def verify_marginal_stability(g: GoodwinParams, decomposition: SpectralDecomposition) -> MarginalStabilityReport:
    """
    Check that G0 has a single pole at 0 and G1 a pole pair at +-jw, every
    other pole of every mode lying in the open left half-plane.

    Failures are collected in ``violations``; the call itself only raises on
    violated preconditions.

    Raises:
        PreconditionError: If R <= 1.
        DisconnectedTopologyError: If the topology is disconnected.
    """
    if decomposition.algebraic_connectivity <= 0:
        raise DisconnectedTopologyError("Marginal-stability check requires a connected topology")
    equilibrium = solve_equilibrium(g)
    R = oscillation_index(g, equilibrium)
    if R <= 1:
        raise PreconditionError(f"Marginal-stability check requires R > 1, got R={R:.6f}")

    xi_star = g.product
    eta_star = g.product - g.pair_sum * g.total
    w = float(np.sqrt(g.pair_sum))

    g0 = mode_pole_polynomials(g, xi_star, decomposition)
    g1 = mode_pole_polynomials(g, eta_star, decomposition)
    g0_roots = cubic_roots(*g0[0])
    g1_roots = cubic_roots(*g1[0])

    # G0: exactly one root at the origin
    near_zero = np.abs(g0_roots) < ROOT_TOL
    g0_zero_root = int(near_zero.sum()) == 1
    g0_rest_stable = bool(np.all(g0_roots[~near_zero].real < -BOUNDARY_TOL))

    # G1: conjugate pair at +-jw, third root in the open left half-plane
    on_pair = np.array([min(abs(r - 1j * w), abs(r + 1j * w)) < ROOT_TOL for r in g1_roots])
    has_plus = any(abs(r - 1j * w) < ROOT_TOL for r in g1_roots)
    has_minus = any(abs(r + 1j * w) < ROOT_TOL for r in g1_roots)
    g1_imaginary_pair = bool(has_plus and has_minus and on_pair.sum() == 2)
    g1_third_stable = bool(np.all(g1_roots[~on_pair].real < -BOUNDARY_TOL))

    g0_modes_stable = _modes_strictly_stable(g0[1:])
    g1_modes_stable = _modes_strictly_stable(g1[1:])

    violations = []
    if not g0_zero_root:
        violations.append("G0 mode 1 does not have exactly one root at s=0")
    if not g0_rest_stable:
        violations.append("G0 mode 1 has a nonzero root outside the open left half-plane")
    if not g1_imaginary_pair:
        violations.append(f"G1 mode 1 has no root pair at s=+-j{w:.6f}")
    if not g1_third_stable:
        violations.append("G1 mode 1 third root is not in the open left half-plane")
    if not g0_modes_stable:
        violations.append("A G0 mode j>=2 is not strictly stable")
    if not g1_modes_stable:
        violations.append("A G1 mode j>=2 is not strictly stable")

    return MarginalStabilityReport(
        w=w,
        g0_mode1_roots=list(g0_roots),
        g1_mode1_roots=list(g1_roots),
        g0_mode1_class=routh_hurwitz_cubic(*g0[0]),
        g1_mode1_class=routh_hurwitz_cubic(*g1[0]),
        g0_zero_root=g0_zero_root,
        g0_rest_stable=g0_rest_stable,
        g1_imaginary_pair=g1_imaginary_pair,
        g1_third_stable=g1_third_stable,
        g0_modes_stable=g0_modes_stable,
        g1_modes_stable=g1_modes_stable,
        violations=violations,
    )


def linear_instability(g: GoodwinParams, sigma: Optional[float] = None) -> StabilityClass:
    """Routh-Hurwitz class of the consensus mode linearized at the equilibrium."""
    if sigma is None:
        sigma = linearization_gain(g, solve_equilibrium(g))
    return routh_hurwitz_cubic(*mode_cubic(g, sigma))
