"""End-to-end solve: problem spec to coefficient vector with diagnostics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .assembly import ProblemSpec, assemble_system, k_floor
from .fracparams import FracParams
from .linsolve import condition_estimate, lu_solve
from .spaces import CoeffVec, WeightSpec, eval_solution


@dataclass(frozen=True)
class Solution:
    """Solved expansion phi (trial basis, length N+1) with run diagnostics:
    k_min and where it was attained, 1-norm condition estimate, relative
    residual of the linear solve, and the reciprocal pivot-growth ratio."""

    spec: ProblemSpec
    fp: FracParams
    phi: CoeffVec
    diagnostics: dict

    def u(self, x):
        """Pointwise solution u(x) = omega(x) phi(x); zero at both endpoints."""
        return eval_solution(self.phi, WeightSpec(self.fp), x)


def solve(spec: ProblemSpec) -> Solution:
    """Assemble and solve the Petrov-Galerkin system for the given variant."""
    system = assemble_system(spec)
    k_min, k_at = k_floor(spec)
    phi_vec, pivot_growth = lu_solve(system.matrix, system.rhs)
    cond = condition_estimate(system.matrix)
    res = system.matrix @ phi_vec - system.rhs
    denom = float(
        np.linalg.norm(system.matrix, np.inf) * np.linalg.norm(phi_vec, np.inf)
    )
    residual = float(np.linalg.norm(res, np.inf) / denom) if denom > 0 else 0.0
    trial = WeightSpec(spec.fp).trial_params
    return Solution(
        spec=spec,
        fp=spec.fp,
        phi=CoeffVec(trial, phi_vec),
        diagnostics={
            "k_min": k_min,
            "k_min_location": k_at,
            "condition": cond,
            "residual": residual,
            "pivot_growth": pivot_growth,
        },
    )
