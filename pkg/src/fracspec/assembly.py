"""Petrov-Galerkin system assembly.

Trial functions are u = omega * Ghat_i^{(alpha-beta,beta)}, test functions
Ghat_j^{(beta,alpha-beta)} paired under the omega* weight.  Applying the
derivative and fractional-integral identities collapses every term of the
bilinear form to a plain weighted integral of products of shifted Jacobi
polynomials, each with its own Gauss-Jacobi weight:

    B0 acute:  exponents (alpha-beta-1, beta-1)
    B0 grave:  exponents (beta-1, alpha-beta-1)
    B1:        exponents (alpha-1, alpha-1)
    B2:        exponents (alpha, alpha)
    rhs:       exponents (beta, alpha-beta)

The acute variant keeps the diffusivity k inside the fractional integral;
the grave variant applies k outside it.  They agree when k is constant.
Matrix orientation: rows are the test index j, columns the trial index i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .fracparams import FracParams, mu
from .jacobi import (
    JacobiParams,
    QuadratureRule,
    as_params,
    eval_Ghat_table,
    gauss_jacobi,
)

CoeffFn = Callable[[np.ndarray], np.ndarray]


class AssemblyError(RuntimeError):
    """Invalid data detected while building the discrete system."""


@dataclass(frozen=True)
class ProblemSpec:
    """One boundary-value problem instance ready for discretization.

    quad_points of None resolves to N + 20, enough to integrate the
    polynomial part of every term exactly with headroom for smooth
    coefficients.
    """

    fp: FracParams
    variant: str
    k: CoeffFn
    b: CoeffFn
    c: CoeffFn
    f: CoeffFn
    N: int
    quad_points: Optional[int] = None
    N_ref: int = 40

    def __post_init__(self):
        if self.variant not in ("acute", "grave"):
            raise ValueError(
                f"ProblemSpec: variant must be 'acute' or 'grave', got {self.variant!r}"
            )
        if self.N < 1:
            raise ValueError(f"ProblemSpec: N must be at least 1, got {self.N}")
        if self.quad_points is not None and self.quad_points < self.N + 20:
            raise ValueError(
                f"ProblemSpec: quad_points must be at least N+20 = {self.N + 20}, "
                f"got {self.quad_points}"
            )
        if self.N_ref < 1:
            raise ValueError(f"ProblemSpec: N_ref must be at least 1, got {self.N_ref}")

    @property
    def q(self) -> int:
        return self.quad_points if self.quad_points is not None else self.N + 20


@dataclass(frozen=True)
class DiscreteSystem:
    """Dense system: matrix entry (j, i) pairs trial i against test j."""

    matrix: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.matrix, dtype=float)
        r = np.asarray(self.rhs, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or r.shape != (A.shape[0],):
            raise ValueError(
                f"DiscreteSystem: shape mismatch, matrix {A.shape}, rhs {r.shape}"
            )
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(r))):
            raise ValueError("DiscreteSystem: entries must be finite")
        object.__setattr__(self, "matrix", A)
        object.__setattr__(self, "rhs", r)


def composite_rule(p, n: int, breaks) -> QuadratureRule:
    """Quadrature for omega^{(a,b)} on (0,1) split at interior breakpoints.

    The first piece [0, x1] uses a rule with weight x^b alone, folding the
    smooth-there factor (1-x)^a into the integrand weight; the last piece
    mirrors this with (1-x)^a.  Interior pieces use Gauss-Legendre with the
    whole weight folded in.  Each piece gets n points, so piecewise
    polynomials of degree < 2n against the same breaks integrate to rel.
    1e-9.
    """
    p = as_params(p)
    breaks = sorted(set(float(b) for b in breaks))
    if not breaks:
        return gauss_jacobi(p, n)
    if breaks[0] <= 0.0 or breaks[-1] >= 1.0:
        raise ValueError(f"composite_rule: breaks must lie inside (0,1), got {breaks}")
    a, b = p.a, p.b
    edges = [0.0] + breaks + [1.0]
    left_rule = gauss_jacobi(JacobiParams(0.0, b), n)
    right_rule = gauss_jacobi(JacobiParams(a, 0.0), n)
    mid_rule = gauss_jacobi(JacobiParams(0.0, 0.0), n)
    nodes = []
    weights = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        h = hi - lo
        if lo == 0.0:
            x = h * left_rule.nodes
            w = h ** (b + 1.0) * left_rule.weights * (1.0 - x) ** a
        elif hi == 1.0:
            x = 1.0 - h * (1.0 - right_rule.nodes)
            w = h ** (a + 1.0) * right_rule.weights * x ** b
        else:
            x = lo + h * mid_rule.nodes
            w = h * mid_rule.weights * (1.0 - x) ** a * x ** b
        nodes.append(x)
        weights.append(w)
    nodes = np.concatenate(nodes)
    weights = np.concatenate(weights)
    order = np.argsort(nodes)
    return QuadratureRule(p, nodes[order], weights[order])


def _coeff_breaks(fn) -> list:
    bp = getattr(fn, "breakpoints", None)
    if callable(bp):
        return [x for x in bp() if 0.0 < x < 1.0]
    return []


def _rule_for(spec: ProblemSpec, p: JacobiParams, fn) -> QuadratureRule:
    breaks = _coeff_breaks(fn)
    if breaks:
        return composite_rule(p, spec.q, breaks)
    return gauss_jacobi(p, spec.q)


def _sample(fn, nodes: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(fn(nodes), dtype=float)
    except (TypeError, ValueError):
        vals = np.array([float(fn(x)) for x in nodes])
    if vals.shape != nodes.shape:
        vals = np.broadcast_to(vals, nodes.shape).astype(float)
    return vals


def k_floor(spec: ProblemSpec) -> tuple[float, float]:
    """Minimum of k over the assembly quadrature grid and where it occurs."""
    p = _b0_params(spec)
    rule = _rule_for(spec, p, spec.k)
    kv = _sample(spec.k, rule.nodes)
    idx = int(np.argmin(kv))
    return float(kv[idx]), float(rule.nodes[idx])


def _b0_params(spec: ProblemSpec) -> JacobiParams:
    a, b = spec.fp.alpha, spec.fp.beta
    if spec.variant == "acute":
        return JacobiParams(a - b - 1.0, b - 1.0)
    return JacobiParams(b - 1.0, a - b - 1.0)


def _norm_ratios(fp: FracParams, N: int) -> np.ndarray:
    m = np.arange(N + 1)
    # ratio of neighboring basis norms across the two families
    return np.sqrt((m + fp.alpha) / (m + 1.0))


def assemble_B0(spec: ProblemSpec) -> np.ndarray:
    """Fractional-diffusion block.

    Both variants reduce to one weighted integral of k times two
    degree-shifted orthonormal polynomials; for constant k orthonormality
    collapses the matrix to the positive diagonal k |c**| Gamma(i+alpha+1) /
    Gamma(i+1).
    """
    fp, N = spec.fp, spec.N
    p0 = _b0_params(spec)
    rule = _rule_for(spec, p0, spec.k)
    kv = _sample(spec.k, rule.nodes)
    kmin_idx = int(np.argmin(kv))
    if kv[kmin_idx] <= 0.0:
        raise AssemblyError(
            f"diffusivity must be positive: k({rule.nodes[kmin_idx]:.6g}) = "
            f"{kv[kmin_idx]:.6g}"
        )
    G = eval_Ghat_table(p0, N + 1, rule.nodes)[:, 1:]
    core = (G * (rule.weights * kv)[:, None]).T @ G
    nr = _norm_ratios(fp, N)
    idx = np.arange(N + 1)
    mus = np.array([mu(fp, int(j)) for j in idx])
    if spec.variant == "acute":
        col = (idx + 1.0) * nr
        row = -mus * nr
    else:
        col = -mus * nr
        row = (idx + 1.0) * nr
    return row[:, None] * core * col[None, :]


def assemble_B1(spec: ProblemSpec) -> np.ndarray:
    """Advection block: pairs b times the derivative of the weighted trial
    function against the test polynomial; combined weight (alpha-1, alpha-1)."""
    fp, N = spec.fp, spec.N
    a, b = fp.alpha, fp.beta
    rule = _rule_for(spec, JacobiParams(a - 1.0, a - 1.0), spec.b)
    bv = _sample(spec.b, rule.nodes)
    test = eval_Ghat_table(JacobiParams(b, a - b), N, rule.nodes)
    dtrial = eval_Ghat_table(JacobiParams(a - b - 1.0, b - 1.0), N + 1, rule.nodes)[:, 1:]
    idx = np.arange(N + 1)
    scale = -(idx + 1.0) * _norm_ratios(fp, N)
    return (test * (rule.weights * bv)[:, None]).T @ (dtrial * scale[None, :])


def assemble_B2(spec: ProblemSpec) -> np.ndarray:
    """Reaction block: c against trial times test, weight (alpha, alpha)."""
    fp, N = spec.fp, spec.N
    a, b = fp.alpha, fp.beta
    rule = _rule_for(spec, JacobiParams(a, a), spec.c)
    cv = _sample(spec.c, rule.nodes)
    trial = eval_Ghat_table(JacobiParams(a - b, b), N, rule.nodes)
    test = eval_Ghat_table(JacobiParams(b, a - b), N, rule.nodes)
    return (test * (rule.weights * cv)[:, None]).T @ trial


def assemble_rhs(spec: ProblemSpec) -> np.ndarray:
    """Load vector: entry j = integral of omega* f Ghat_j^{(beta,alpha-beta)}."""
    fp, N = spec.fp, spec.N
    a, b = fp.alpha, fp.beta
    rule = _rule_for(spec, JacobiParams(b, a - b), spec.f)
    fv = _sample(spec.f, rule.nodes)
    test = eval_Ghat_table(JacobiParams(b, a - b), N, rule.nodes)
    return test.T @ (rule.weights * fv)


def assemble_system(spec: ProblemSpec) -> DiscreteSystem:
    """Full matrix B0 + B1 + B2 and load vector for the given variant."""
    A = assemble_B0(spec) + assemble_B1(spec) + assemble_B2(spec)
    return DiscreteSystem(A, assemble_rhs(spec))
