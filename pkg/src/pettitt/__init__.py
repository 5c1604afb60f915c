"""Pettitt and bootstrap Pettitt change-point tests, prewhitening, and a
Monte Carlo rejection-rate harness for hydroclimatological series."""

from .core import (
    BootstrapConfig,
    TestResult,
    approx_p_value,
    bootstrap_test,
    classical_test,
    pettitt_statistic,
    pettitt_u,
    sgn,
    u_profile,
)
from .montecarlo import RejectionTable, Scenario, rejection_rates, run_grid
from .prewhiten import (
    PrewhitenReport,
    bias_corrected_rho,
    lag1_autocorr,
    prewhiten_pipeline,
    remove_step,
)
from .synth import DistributionSpec, ShiftSpec, generate_series, solve_params

__all__ = [
    "BootstrapConfig",
    "TestResult",
    "approx_p_value",
    "bootstrap_test",
    "classical_test",
    "pettitt_statistic",
    "pettitt_u",
    "sgn",
    "u_profile",
    "RejectionTable",
    "Scenario",
    "rejection_rates",
    "run_grid",
    "PrewhitenReport",
    "bias_corrected_rho",
    "lag1_autocorr",
    "prewhiten_pipeline",
    "remove_step",
    "DistributionSpec",
    "ShiftSpec",
    "generate_series",
    "solve_params",
]

__version__ = "0.1.0"
