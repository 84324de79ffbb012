"""Spectral Petrov-Galerkin solver for two-sided fractional diffusion
problems on (0,1).

The solver expands u = omega * phi in weighted shifted Jacobi polynomials,
where the weight omega and the basis exponents are tied to the fractional
order alpha and the directional weight r so that the diffusion term becomes
diagonal for constant diffusivity.  Two operator variants are supported:
"acute" keeps k(x) inside the fractional integral, "grave" applies it
outside.  Modules build up from scalar special functions through Jacobi
machinery, assembly and linear algebra to convergence/comparison studies
and a small CLI.
"""

from .specfun import beta, gamma, log_gamma
from .jacobi import (
    JacobiParams,
    QuadratureError,
    QuadratureRule,
    deriv_G,
    eval_G,
    eval_G_table,
    eval_Ghat_table,
    gauss_jacobi,
    norm_G,
    norm_ratio_sq,
    weighted_deriv_identity_check,
)
from .fracparams import (
    FracParams,
    beta_to_r,
    mu,
    predicted_rates,
    sigma,
    solve_beta,
)
from .coeffexpr import EvalError, Expr, ParseError, breakpoints, parse, pretty
from .spaces import (
    CoeffVec,
    WeightSpec,
    error_norms,
    eval_solution,
    project,
    sobolev_norm,
)
from .assembly import (
    AssemblyError,
    DiscreteSystem,
    ProblemSpec,
    assemble_B0,
    assemble_B1,
    assemble_B2,
    assemble_rhs,
    assemble_system,
    composite_rule,
    k_floor,
)
from .linsolve import SingularMatrixError, condition_estimate, lu_factors, lu_solve
from .solver import Solution, solve
from .experiments import (
    ComparisonReport,
    ConvergenceReport,
    coeff_is_zero,
    observed_rate,
    run_comparison,
    run_convergence,
)

__version__ = "0.1.0"

__all__ = [
    "beta",
    "gamma",
    "log_gamma",
    "JacobiParams",
    "QuadratureError",
    "QuadratureRule",
    "deriv_G",
    "eval_G",
    "eval_G_table",
    "eval_Ghat_table",
    "gauss_jacobi",
    "norm_G",
    "norm_ratio_sq",
    "weighted_deriv_identity_check",
    "FracParams",
    "beta_to_r",
    "mu",
    "predicted_rates",
    "sigma",
    "solve_beta",
    "EvalError",
    "Expr",
    "ParseError",
    "breakpoints",
    "parse",
    "pretty",
    "CoeffVec",
    "WeightSpec",
    "error_norms",
    "eval_solution",
    "project",
    "sobolev_norm",
    "AssemblyError",
    "DiscreteSystem",
    "ProblemSpec",
    "assemble_B0",
    "assemble_B1",
    "assemble_B2",
    "assemble_rhs",
    "assemble_system",
    "composite_rule",
    "k_floor",
    "SingularMatrixError",
    "condition_estimate",
    "lu_factors",
    "lu_solve",
    "Solution",
    "solve",
    "ComparisonReport",
    "ConvergenceReport",
    "coeff_is_zero",
    "observed_rate",
    "run_comparison",
    "run_convergence",
    "__version__",
]
