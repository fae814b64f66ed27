"""Explicit steady states of a logarithmic-sensitivity chemotaxis model on (0, 1),
their admissibility and stability gates, and a semi-implicit solver that checks
convergence toward them."""

from .constraints import (AdmissibilityReport, BoundaryData, StabilityGate, derive_boundary,
                          exclusivity_gap, stability_gate, validate_state)
from .grid import REFERENCE_GRID, Grid1D
from .model import (REFERENCE_PARAMS, CbarProfile, DomainError, Family, ModelParams, SteadyState,
                    ansatz_residual, eval_steady, eval_steady_derivs, infer_sigma, kappa,
                    ode_residual, reconstruct_cbar, steady_system_residual)
from .solver import InitialProfile, SimConfig, SimState, build_initial, run, step, steady_error

__all__ = [
    "AdmissibilityReport", "BoundaryData", "CbarProfile", "DomainError", "Family", "Grid1D",
    "InitialProfile", "ModelParams", "REFERENCE_GRID", "REFERENCE_PARAMS", "SimConfig", "SimState",
    "StabilityGate", "SteadyState", "ansatz_residual", "build_initial", "derive_boundary",
    "eval_steady", "eval_steady_derivs", "exclusivity_gap", "infer_sigma", "kappa",
    "ode_residual", "reconstruct_cbar", "run", "stability_gate", "steady_error",
    "steady_system_residual", "step", "validate_state",
]
