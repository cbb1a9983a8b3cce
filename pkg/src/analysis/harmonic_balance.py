"""Describing functions, harmonic balance and the collective-period prediction."""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import simpson

from src.analysis.equilibrium import oscillation_index, solve_equilibrium
from src.model.network import hill_derivative
from src.model.params import GoodwinParams
from src.utils.errors import DomainError, NoBalanceSolutionError, PreconditionError

DEFAULT_NODES = 2048


@dataclass(frozen=True)
class PeriodPrediction:
    """Angular frequency and period of the synchronized oscillation."""
    w: float
    T_collective: float
    T_dimensional: Optional[float] = None

    def as_dict(self) -> dict:
        return {"w": self.w, "T_collective": self.T_collective, "T_dimensional": self.T_dimensional}


def predict_period(g: GoodwinParams) -> PeriodPrediction:
    """
    w = sqrt(b1 b2 + b1 b3 + b2 b3), T = 2 pi / w.

    Depends on the degradation rates only. The dimensional period is
    sigma * T = 2 pi / sqrt(k1 k2 + k1 k3 + k2 k3) when the time scale is known.
    """
    w = float(np.sqrt(g.pair_sum))
    T = 2 * np.pi / w
    T_dim = g.sigma_time * T if g.sigma_time is not None else None
    return PeriodPrediction(w=w, T_collective=float(T), T_dimensional=T_dim)


def closed_form_gains(g: GoodwinParams) -> Tuple[float, float]:
    """
    Gains that put the consensus-mode poles on the imaginary axis.

    xi* = b1 b2 b3 (pole at 0), eta* = b1 b2 b3 - (b1b2+b1b3+b2b3)(b1+b2+b3)
    (pole pair at +-jw). eta* is always negative.
    """
    xi_star = g.product
    eta_star = g.product - g.pair_sum * g.total
    return xi_star, eta_star


def _swing(alpha: float, beta: float, p: float, nodes: int):
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if beta < 0:
        raise DomainError(f"beta must be nonnegative, got {beta}")
    # Simpson needs an even number of intervals
    nodes += nodes % 2
    t = np.linspace(-np.pi, np.pi, nodes + 1)
    # concentrations are nonnegative: clamp the argument of f
    arg = np.maximum(alpha + beta * np.sin(t), 0.0)
    return t, 1.0 / (1.0 + np.power(arg, p))


def describing_functions(alpha: float, beta: float, p: float, nodes: int = DEFAULT_NODES) -> Tuple[float, float]:
    """
    Describing-function gains of f under the input alpha + beta sin(t).

    xi  = 1/(2 pi alpha) * int f(alpha + beta sin t) dt
    eta = 1/(2 pi alpha) * int f(alpha + beta sin t) sin t dt

    over [-pi, pi], composite Simpson with ``nodes`` intervals.

    Raises:
        DomainError: If alpha <= 0 or beta < 0.
    """
    t, y = _swing(alpha, beta, p, nodes)
    xi = simpson(y, x=t) / (2 * np.pi * alpha)
    eta = simpson(y * np.sin(t), x=t) / (2 * np.pi * alpha)
    return float(xi), float(eta)


def first_harmonic_gain(alpha: float, beta: float, p: float, nodes: int = DEFAULT_NODES) -> float:
    """
    Sinusoidal-input describing function 1/(pi beta) * int f(alpha + beta sin t) sin t dt.

    Equals eta * 2 alpha / beta and tends to f'(alpha) as beta -> 0.
    """
    if beta == 0:
        if alpha <= 0:
            raise DomainError(f"alpha must be positive, got {alpha}")
        return float(hill_derivative(alpha, p))
    t, y = _swing(alpha, beta, p, nodes)
    return float(simpson(y * np.sin(t), x=t) / (np.pi * beta))


def quadrature_delta(alpha: float, beta: float, p: float, nodes: int = DEFAULT_NODES) -> float:
    """Largest change of (xi, eta) when the number of nodes is doubled."""
    coarse = np.array(describing_functions(alpha, beta, p, nodes))
    fine = np.array(describing_functions(alpha, beta, p, 2 * nodes))
    return float(np.max(np.abs(fine - coarse)))


@dataclass(frozen=True)
class HarmonicBalanceSolution:
    """Amplitudes of the synchronized waveform x3 ~ alpha + beta sin(w t).

    Amplitudes are an extrapolation of the first-harmonic approximation; the
    period prediction does not depend on them.
    """
    alpha: float
    beta: float
    xi: float
    eta: float
    harmonic_gain: float
    residuals: Tuple[float, float]
    iterations: int
    w: float
    quadrature_delta: float
    extrapolated: bool = True

    def waveform(self, t):
        """Predicted x3(t)."""
        return self.alpha + self.beta * np.sin(self.w * np.asarray(t, dtype=float))

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "xi": self.xi, "eta": self.eta,
                "harmonic_gain": self.harmonic_gain, "residuals": list(self.residuals),
                "iterations": self.iterations, "w": self.w,
                "quadrature_delta": self.quadrature_delta, "extrapolated": self.extrapolated}


def solve_hb_amplitudes(g: GoodwinParams, nodes: int = DEFAULT_NODES, max_iter: int = 200,
                        tol: float = 1e-8) -> HarmonicBalanceSolution:
    """
    Solve xi(alpha, beta) = xi* and N1(alpha, beta) = eta* for the amplitudes.

    Damped Newton iteration with a forward-difference Jacobian, started at
    alpha = x0, beta = x0 / 2. The step is halved until the residual norm
    decreases and alpha stays positive.

    Raises:
        PreconditionError: If R <= 1 (no oscillation to balance).
        NoBalanceSolutionError: If the residuals are not below ``tol``
            within ``max_iter`` iterations.
    """
    equilibrium = solve_equilibrium(g)
    R = oscillation_index(g, equilibrium)
    if R <= 1:
        raise PreconditionError(f"Harmonic balance requires R > 1, got R={R:.6f}")

    xi_star, eta_star = closed_form_gains(g)

    def residual(z):
        a, b = z
        xi, _ = describing_functions(a, b, g.p, nodes)
        return np.array([xi - xi_star, first_harmonic_gain(a, b, g.p, nodes) - eta_star])

    z = np.array([equilibrium.x0, equilibrium.x0 / 2])
    r = residual(z)
    iterations = 0
    while np.max(np.abs(r)) >= tol:
        if iterations >= max_iter:
            raise NoBalanceSolutionError(
                f"Harmonic balance did not converge after {max_iter} iterations "
                f"(residuals {r[0]:.3e}, {r[1]:.3e})",
                residuals=tuple(float(v) for v in r), iterations=iterations)
        iterations += 1

        jacobian = np.empty((2, 2))
        for k in range(2):
            h = 1e-7 * max(1.0, abs(z[k]))
            dz = z.copy()
            dz[k] += h
            jacobian[:, k] = (residual(dz) - r) / h
        try:
            step = np.linalg.solve(jacobian, r)
        except np.linalg.LinAlgError:
            raise NoBalanceSolutionError("Singular Jacobian in harmonic balance",
                                         residuals=tuple(float(v) for v in r), iterations=iterations)

        norm = np.linalg.norm(r)
        damping = 1.0
        while damping > 1e-10:
            candidate = z - damping * step
            candidate[1] = max(candidate[1], 0.0)
            if candidate[0] > 0:
                r_candidate = residual(candidate)
                if np.linalg.norm(r_candidate) < norm:
                    break
            damping /= 2
        else:
            raise NoBalanceSolutionError("Line search failed in harmonic balance",
                                         residuals=tuple(float(v) for v in r), iterations=iterations)
        z, r = candidate, r_candidate

    alpha, beta = float(z[0]), float(z[1])
    xi, eta = describing_functions(alpha, beta, g.p, nodes)
    return HarmonicBalanceSolution(
        alpha=alpha,
        beta=beta,
        xi=xi,
        eta=eta,
        harmonic_gain=first_harmonic_gain(alpha, beta, g.p, nodes),
        residuals=(float(r[0]), float(r[1])),
        iterations=iterations,
        w=predict_period(g).w,
        quadrature_delta=quadrature_delta(alpha, beta, g.p, nodes),
        extrapolated=True,
    )
