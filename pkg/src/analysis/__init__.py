"""Closed-form and semi-analytical predictions for coupled Goodwin oscillators."""

from .equilibrium import (
    EquilibriumConvention,
    EquilibriumPoint,
    SyncCondition,
    check_sync_condition,
    gamma_argmax,
    gamma_max_slope,
    instability_verdict,
    linearization_gain,
    oscillation_index,
    solve_equilibrium,
    sync_threshold,
)
from .spectral import SpectralDecomposition, spectral_decompose
from .stability import (
    MarginalStabilityReport,
    StabilityClass,
    cubic_roots,
    linear_instability,
    mode_cubic,
    mode_pole_polynomials,
    routh_hurwitz_cubic,
    verify_marginal_stability,
)
from .harmonic_balance import (
    HarmonicBalanceSolution,
    PeriodPrediction,
    closed_form_gains,
    describing_functions,
    first_harmonic_gain,
    predict_period,
    quadrature_delta,
    solve_hb_amplitudes,
)
from .report import AnalysisReport, analyze

__all__ = [
    'EquilibriumConvention',
    'EquilibriumPoint',
    'SyncCondition',
    'check_sync_condition',
    'gamma_argmax',
    'gamma_max_slope',
    'instability_verdict',
    'linearization_gain',
    'oscillation_index',
    'solve_equilibrium',
    'sync_threshold',
    'SpectralDecomposition',
    'spectral_decompose',
    'MarginalStabilityReport',
    'StabilityClass',
    'cubic_roots',
    'linear_instability',
    'mode_cubic',
    'mode_pole_polynomials',
    'routh_hurwitz_cubic',
    'verify_marginal_stability',
    'HarmonicBalanceSolution',
    'PeriodPrediction',
    'closed_form_gains',
    'describing_functions',
    'first_harmonic_gain',
    'predict_period',
    'quadrature_delta',
    'solve_hb_amplitudes',
    'AnalysisReport',
    'analyze',
]
