"""Convergence tables and the acute-versus-grave model comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .assembly import ProblemSpec
from .fracparams import FracParams, predicted_rates
from .solver import solve
from .spaces import error_norms


@dataclass(frozen=True)
class ConvergenceReport:
    """Rows (N, err_L2, rate_L2, err_H1, rate_H1); rates are None on the
    first row.  predicted holds the (L2, energy) exponents for the config."""

    rows: tuple
    predicted: tuple
    spec_base: ProblemSpec


@dataclass(frozen=True)
class ComparisonReport:
    """Solutions of both operator variants for one diffusivity, sampled on a
    uniform grid including the endpoints (where both vanish)."""

    x: np.ndarray
    u_acute: np.ndarray
    u_grave: np.ndarray
    spec_acute: ProblemSpec
    spec_grave: ProblemSpec

    def __post_init__(self):
        if not (self.x.shape == self.u_acute.shape == self.u_grave.shape):
            raise ValueError("ComparisonReport: column shapes must agree")


def observed_rate(e1: float, e2: float, N1: int, N2: int) -> float:
    """Empirical decay exponent ln(e1/e2)/ln(N2/N1) between two rows."""
    if e1 <= 0 or e2 <= 0:
        raise ValueError(f"observed_rate: errors must be positive, got {e1}, {e2}")
    if N1 == N2:
        raise ValueError("observed_rate: degrees must differ")
    return math.log(e1 / e2) / math.log(N2 / N1)


def coeff_is_zero(fn) -> bool:
    """True when the coefficient samples to exactly zero on a fine grid."""
    xs = np.linspace(0.0, 1.0, 257)
    bp = getattr(fn, "breakpoints", None)
    if callable(bp):
        extra = [b for b in bp() if 0.0 <= b <= 1.0]
        if extra:
            xs = np.sort(np.concatenate([xs, np.asarray(extra)]))
    try:
        vals = np.asarray(fn(xs), dtype=float)
    except (TypeError, ValueError):
        vals = np.array([float(fn(x)) for x in xs])
    return bool(np.max(np.abs(vals)) == 0.0)


def _with_degree(spec: ProblemSpec, N: int) -> ProblemSpec:
    q = spec.quad_points
    if q is not None:
        q = max(q, N + 20)
    return replace(spec, N=N, quad_points=q)


def run_convergence(
    spec_base: ProblemSpec, Ns: Sequence[int], N_ref: Optional[int] = None
) -> ConvergenceReport:
    """Solve once at the reference degree, then at each N, reporting errors
    of the expansion against the reference and the log-ratio rates."""
    Ns = [int(n) for n in Ns]
    if not Ns:
        raise ValueError("run_convergence: need at least one degree")
    if any(n2 <= n1 for n1, n2 in zip(Ns[:-1], Ns[1:])):
        raise ValueError(f"run_convergence: degrees must be ascending, got {Ns}")
    if N_ref is None:
        N_ref = spec_base.N_ref
    if max(Ns) >= N_ref:
        raise ValueError(
            f"run_convergence: max degree {max(Ns)} must stay below N_ref={N_ref}"
        )
    try:
        phi_ref = solve(_with_degree(spec_base, N_ref)).phi
    except Exception as exc:
        raise RuntimeError(f"convergence run failed at N={N_ref}: {exc}") from exc
    errs = []
    for N in Ns:
        try:
            sol = solve(_with_degree(spec_base, N))
        except Exception as exc:
            raise RuntimeError(f"convergence run failed at N={N}: {exc}") from exc
        errs.append(error_norms(phi_ref, sol.phi, [0.0, 1.0]))
    def rate(ep: float, e: float, Np: int, N: int):
        # a manufactured-exact run can hit error 0, where the log ratio is undefined
        if ep <= 0.0 or e <= 0.0:
            return None
        return observed_rate(ep, e, Np, N)

    rows = []
    for i, (N, (e0, e1)) in enumerate(zip(Ns, errs)):
        if i == 0:
            rows.append((N, e0, None, e1, None))
        else:
            Np, (e0p, e1p) = Ns[i - 1], errs[i - 1]
            rows.append((N, e0, rate(e0p, e0, Np, N), e1, rate(e1p, e1, Np, N)))
    pred = predicted_rates(
        spec_base.fp, coeff_is_zero(spec_base.b), math.inf, spec_base.variant
    )
    return ConvergenceReport(tuple(rows), pred, spec_base)


def run_comparison(
    fp: FracParams,
    k_variants: Sequence,
    b,
    c,
    f,
    N: int = 40,
    grid_points: int = 1001,
    quad_points: Optional[int] = None,
) -> list[ComparisonReport]:
    """Solve both operator variants for each diffusivity in k_variants and
    sample them on a uniform grid; one report per diffusivity, input order."""
    if grid_points < 2:
        raise ValueError(f"run_comparison: need at least 2 grid points, got {grid_points}")
    xs = np.linspace(0.0, 1.0, grid_points)
    reports = []
    for k in k_variants:
        spec_a = ProblemSpec(fp, "acute", k, b, c, f, N, quad_points)
        spec_g = ProblemSpec(fp, "grave", k, b, c, f, N, quad_points)
        ua = solve(spec_a).u(xs)
        ug = solve(spec_g).u(xs)
        reports.append(ComparisonReport(xs, ua, ug, spec_a, spec_g))
    return reports
