"""Exact traveling waves of a diffusive predator-prey system with Allee effect."""

__version__ = "0.1.0"

from .algebraic import CoeffResiduals, coeff_residuals, solve_families
from .exact import (ExpansionCoeffs, SolutionSpec, derive_set_a, derive_set_b,
                    eval_G, eval_phi, eval_uv, find_singularities, make_spec,
                    period_case2)
from .model import (CaseKind, ModelParams, classify_case, discriminant,
                    validate_model_params)
from .sim import GridField, SimConfig, measure_wave_speed, simulate, step
from .verify import (ResidualReport, check_G_ode, derivative_crosscheck,
                     ode_residual, pde_residual)

__all__ = [
    "CaseKind", "CoeffResiduals", "ExpansionCoeffs", "GridField",
    "ModelParams", "ResidualReport", "SimConfig", "SolutionSpec",
    "check_G_ode", "classify_case", "coeff_residuals", "derivative_crosscheck",
    "derive_set_a", "derive_set_b", "discriminant", "eval_G", "eval_phi",
    "eval_uv", "find_singularities", "make_spec", "measure_wave_speed",
    "ode_residual", "pde_residual", "period_case2", "simulate",
    "solve_families", "step", "validate_model_params",
]
