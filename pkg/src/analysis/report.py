"""One-call analysis of a parameter set on a coupling topology."""

from dataclasses import dataclass, field
from typing import List, Optional

from src.analysis.equilibrium import (
    EquilibriumConvention,
    EquilibriumPoint,
    check_sync_condition,
    gamma_max_slope,
    instability_verdict,
    linearization_gain,
    oscillation_index,
    solve_equilibrium,
    sync_threshold,
)
from src.analysis.harmonic_balance import (
    HarmonicBalanceSolution,
    closed_form_gains,
    predict_period,
    solve_hb_amplitudes,
)
from src.analysis.spectral import spectral_decompose
from src.analysis.stability import MarginalStabilityReport, verify_marginal_stability
from src.model.network import CouplingTopology
from src.model.params import GoodwinParams
from src.utils.errors import GoodwinNetError


@dataclass
class AnalysisReport:
    """Every closed-form and semi-analytical prediction for one configuration.

    Condition verdicts are always accompanied by the raw quantities they
    compare. ``sync_condition_met`` is None when the topology is disconnected
    or has a single oscillator (the condition does not apply).
    """
    params: GoodwinParams
    equilibrium: EquilibriumPoint
    sigma: float
    R: float
    oscillation_predicted: bool
    verdicts_agree: bool
    gamma: float
    rho: float
    connected: bool
    sync_threshold: float
    sync_condition_met: Optional[bool]
    w: float
    T_collective: float
    T_dimensional: Optional[float]
    xi_star: float
    eta_star: float
    marginal_stability: Optional[MarginalStabilityReport] = None
    harmonic_balance: Optional[HarmonicBalanceSolution] = None
    notes: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "equilibrium": self.equilibrium.as_dict(),
            "sigma": self.sigma,
            "R": self.R,
            "oscillation_predicted": self.oscillation_predicted,
            "verdicts_agree": self.verdicts_agree,
            "gamma": self.gamma,
            "rho": self.rho,
            "connected": self.connected,
            "sync_threshold": self.sync_threshold,
            "sync_condition_met": self.sync_condition_met,
            "sync_condition_applicable": self.sync_condition_met is not None,
            "sync_condition_sufficient_only": True,
            "w": self.w,
            "T_collective": self.T_collective,
            "T_dimensional": self.T_dimensional,
            "xi_star": self.xi_star,
            "eta_star": self.eta_star,
            "marginal_stability": self.marginal_stability.as_dict() if self.marginal_stability else None,
            "harmonic_balance": self.harmonic_balance.as_dict() if self.harmonic_balance else None,
            "notes": list(self.notes),
        }


def analyze(g: GoodwinParams, topology: CouplingTopology,
            convention: EquilibriumConvention = EquilibriumConvention.STANDARD,
            solve_amplitudes: bool = True) -> AnalysisReport:
    """
    Build the full AnalysisReport.

    Marginal-stability and amplitude results are attached only when R > 1 on
    a connected topology; their failures become notes instead of errors.
    """
    equilibrium = solve_equilibrium(g, convention)
    sigma = linearization_gain(g, equilibrium)
    R = oscillation_index(g, equilibrium)
    oscillation_predicted = R > 1
    gamma = gamma_max_slope(g.p)
    decomposition = spectral_decompose(topology)
    rho = decomposition.algebraic_connectivity
    period = predict_period(g)
    xi_star, eta_star = closed_form_gains(g)

    notes = []
    coupled = topology.connected and rho > 0
    if coupled:
        sync_met = check_sync_condition(g, gamma, rho, connected=True).satisfied
    elif topology.n == 1:
        sync_met = None
        notes.append("Single oscillator: synchronization condition not applicable")
    else:
        sync_met = None
        notes.append("Topology is disconnected: synchronization condition not applicable")

    marginal = None
    amplitudes = None
    if oscillation_predicted and coupled:
        try:
            marginal = verify_marginal_stability(g, decomposition)
            notes.extend(f"Marginal stability violated: {v}" for v in marginal.violations)
        except GoodwinNetError as exc:
            notes.append(f"Marginal-stability check skipped: {exc}")
    if oscillation_predicted and solve_amplitudes:
        try:
            amplitudes = solve_hb_amplitudes(g)
        except GoodwinNetError as exc:
            notes.append(f"Amplitude solve failed: {exc}")

    return AnalysisReport(
        params=g,
        equilibrium=equilibrium,
        sigma=sigma,
        R=R,
        oscillation_predicted=oscillation_predicted,
        verdicts_agree=instability_verdict(g, sigma) == oscillation_predicted,
        gamma=gamma,
        rho=rho,
        connected=topology.connected,
        sync_threshold=sync_threshold(g, gamma),
        sync_condition_met=sync_met,
        w=period.w,
        T_collective=period.T_collective,
        T_dimensional=period.T_dimensional,
        xi_star=xi_star,
        eta_star=eta_star,
        marginal_stability=marginal,
        harmonic_balance=amplitudes,
        notes=notes,
    )
