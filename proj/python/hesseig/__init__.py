# Copyright (c) the hesseig contributors.
# SPDX-License-Identifier: Apache-2.0
"""First Dirichlet eigenpairs of concave elliptic Hessian operators.

The compiled core exposes the operator families, the structured-grid
solvers, the eigenpair pipeline, the radial shooting oracle, and the
structural property checks.
"""

from ._core import (
    DomainSpec,
    EigenOptions,
    EigenResult,
    Grid,
    GridField,
    HessianOperator,
    NewtonOptions,
    PropertyReport,
    SampleStrategy,
    barrier_subsolution,
    build_grid,
    check_concavity,
    check_condition_T,
    check_garding_equivalence,
    check_strict_gamma_convexity,
    check_urbas,
    condition_T_constant,
    cone_contains,
    eval_F,
    eval_f,
    falsify_quotient_T,
    grad_f,
    hessian_at,
    homotopy_solve_family_rhs,
    inverse_power_refine,
    laplace_mu1,
    linearization_DF,
    oracle_lambda1,
    sample_cone,
    solve_eigenproblem,
    solve_family,
    verify_bounds,
    verify_uniqueness,
)

__all__ = [
    "DomainSpec",
    "EigenOptions",
    "EigenResult",
    "Grid",
    "GridField",
    "HessianOperator",
    "NewtonOptions",
    "PropertyReport",
    "SampleStrategy",
    "barrier_subsolution",
    "build_grid",
    "check_concavity",
    "check_condition_T",
    "check_garding_equivalence",
    "check_strict_gamma_convexity",
    "check_urbas",
    "condition_T_constant",
    "cone_contains",
    "eval_F",
    "eval_f",
    "falsify_quotient_T",
    "grad_f",
    "hessian_at",
    "homotopy_solve_family_rhs",
    "inverse_power_refine",
    "laplace_mu1",
    "linearization_DF",
    "oracle_lambda1",
    "sample_cone",
    "solve_eigenproblem",
    "solve_family",
    "verify_bounds",
    "verify_uniqueness",
]

__version__ = "0.1.0"
