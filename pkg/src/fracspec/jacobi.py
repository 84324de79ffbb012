"""Shifted Jacobi polynomials G_n^{(a,b)}(x) = P_n^{(a,b)}(2x-1) on (0,1):
evaluation, weighted norms, derivative identities, and Gauss-Jacobi
quadrature.

Conventions fixed here once and frozen by the finite-difference self-tests:
all identities are stated on (0,1), where the chain-rule factor 2 of the
shift cancels the 1/2 in the t-derivative formula, so

    d/dx G_n^{(a,b)}(x) = (n+a+b+1) G_{n-1}^{(a+1,b+1)}(x)

holds with no residual power of 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import log_gamma


class QuadratureError(RuntimeError):
    """Root finding for a quadrature rule failed to converge."""


@dataclass(frozen=True)
class JacobiParams:
    """Weight exponents: omega^{(a,b)}(x) = (1-x)^a x^b on (0,1)."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > -1 and self.b > -1):
            raise ValueError(
                f"JacobiParams: exponents must exceed -1 for an integrable "
                f"weight, got (a={self.a}, b={self.b})"
            )


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights integrating f against omega^{(a,b)} on (0,1):
    integral ~= sum(weights * f(nodes))."""

    params: JacobiParams
    nodes: np.ndarray
    weights: np.ndarray


def as_params(p) -> JacobiParams:
    if isinstance(p, JacobiParams):
        return p
    a, b = p
    return JacobiParams(float(a), float(b))


def _recurrence_step(m: int, a: float, b: float):
    # coefficients of P_{m+1} = ((a2 + a3 t) P_m - a4 P_{m-1}) / a1, m >= 1
    s = a + b
    a1 = 2.0 * (m + 1) * (m + s + 1) * (2 * m + s)
    a2 = (2 * m + s + 1) * (a * a - b * b)
    a3 = (2 * m + s) * (2 * m + s + 1) * (2 * m + s + 2)
    a4 = 2.0 * (m + a) * (m + b) * (2 * m + s + 2)
    return a1, a2, a3, a4


def eval_G_table(p, N: int, x) -> np.ndarray:
    """Values G_n^{(a,b)}(x) for all n = 0..N.

    Parameters
    ----------
    p : JacobiParams or (a, b) pair
    N : highest degree
    x : array of points in [0, 1]

    Returns
    -------
    ndarray of shape (len(x), N+1), column n holding G_n at the points.
    """
    p = as_params(p)
    a, b = p.a, p.b
    x = np.atleast_1d(np.asarray(x, dtype=float))
    t = 2.0 * x - 1.0
    V = np.ones((x.size, N + 1))
    if N >= 1:
        V[:, 1] = 0.5 * ((a + b + 2.0) * t + a - b)
    for m in range(1, N):
        a1, a2, a3, a4 = _recurrence_step(m, a, b)
        V[:, m + 1] = ((a2 + a3 * t) * V[:, m] - a4 * V[:, m - 1]) / a1
    return V


def eval_G(p, n: int, x: float) -> float:
    """G_n^{(a,b)}(x) via the standard three-term recurrence at t = 2x-1."""
    if n < 0:
        raise ValueError(f"eval_G: degree must be nonnegative, got {n}")
    return float(eval_G_table(p, n, x)[0, n])


def norm_G(p, j: int) -> float:
    """Weighted L2 norm ||G_j^{(a,b)}|| over omega^{(a,b)} on (0,1).

    Log-space evaluation of
    sqrt( Gamma(j+a+1) Gamma(j+b+1) / ((2j+a+b+1) Gamma(j+1) Gamma(j+a+b+1)) );
    symmetric under (a, b) -> (b, a).
    """
    p = as_params(p)
    a, b = p.a, p.b
    if j < 0:
        raise ValueError(f"norm_G: degree must be nonnegative, got {j}")
    ln = 0.5 * (
        log_gamma(j + a + 1)
        + log_gamma(j + b + 1)
        - log_gamma(j + 1.0)
        - log_gamma(j + a + b + 1)
        - math.log(2 * j + a + b + 1)
    )
    return math.exp(ln)


def eval_Ghat_table(p, N: int, x) -> np.ndarray:
    """Orthonormal values: column n is G_n / ||G_n||."""
    p = as_params(p)
    V = eval_G_table(p, N, x)
    norms = np.array([norm_G(p, j) for j in range(N + 1)])
    return V / norms


def norm_ratio_sq(alpha: float, beta: float, j: int) -> float:
    """||G_j^{(alpha-beta,beta)}||^2 / ||G_{j+1}^{(beta-1,alpha-beta-1)}||^2,
    which collapses to (j+1)/(j+alpha); lies in [1/2, 1] and increases in j."""
    if j < 0:
        raise ValueError(f"norm_ratio_sq: degree must be nonnegative, got {j}")
    return (j + 1) / (j + alpha)


def deriv_G(p, n: int, k: int, x: float) -> float:
    """k-th derivative of G_n^{(a,b)} at x in the (0,1) convention:

        d^k/dx^k G_n = [Gamma(n+k+a+b+1)/Gamma(n+a+b+1)] G_{n-k}^{(a+k,b+k)}.

    Returns 0 for k > n.
    """
    p = as_params(p)
    if k < 0:
        raise ValueError(f"deriv_G: order must be nonnegative, got {k}")
    if k > n:
        return 0.0
    if k == 0:
        return eval_G(p, n, x)
    a, b = p.a, p.b
    fac = math.exp(log_gamma(n + k + a + b + 1) - log_gamma(n + a + b + 1))
    return fac * eval_G(JacobiParams(a + k, b + k), n - k, x)


def _omega(a: float, b: float, x: float) -> float:
    return (1.0 - x) ** a * x ** b


def weighted_deriv_identity_check(p, n: int, k: int, x: float) -> float:
    """Self-test of the weighted derivative identity

        d^k/dx^k [omega^{(a+k,b+k)} G_{n-k}^{(a+k,b+k)}]
            = (-1)^k n!/(n-k)! omega^{(a,b)} G_n^{(a,b)},

    with the left side evaluated by central finite differences.  Returns the
    relative residual; used to pin the sign/scale conventions once.
    """
    p = as_params(p)
    a, b = p.a, p.b
    if not (0 <= k <= n):
        raise ValueError(f"weighted_deriv_identity_check: need 0 <= k <= n, got k={k}, n={n}")
    if not (0.0 < x < 1.0):
        raise ValueError(f"weighted_deriv_identity_check: x must be interior, got {x}")

    def wG(y: float) -> float:
        return _omega(a + k, b + k, y) * eval_G(JacobiParams(a + k, b + k), n - k, y)

    if k == 0:
        lhs = wG(x)
    elif k == 1:
        h = 1e-6
        lhs = (wG(x + h) - wG(x - h)) / (2 * h)
    elif k == 2:
        h = 1e-4
        lhs = (wG(x + h) - 2 * wG(x) + wG(x - h)) / (h * h)
    else:
        # k-th central difference with binomial coefficients
        h = 10.0 ** (-12.0 / (k + 2))
        lhs = sum(
            (-1) ** i * math.comb(k, i) * wG(x + (k / 2 - i) * h) for i in range(k + 1)
        ) / h ** k
    fac = (-1) ** k * math.exp(log_gamma(n + 1.0) - log_gamma(n - k + 1.0))
    rhs = fac * _omega(a, b, x) * eval_G(p, n, x)
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def _P_and_dP(n: int, a: float, b: float, t: np.ndarray):
    """P_n^{(a,b)}(t) and its t-derivative on [-1,1], via the recurrence and
    d/dt P_n = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}."""
    t = np.atleast_1d(t)
    Pm1 = np.ones_like(t)
    if n == 0:
        return Pm1, np.zeros_like(t)
    P = 0.5 * ((a + b + 2.0) * t + a - b)
    for m in range(1, n):
        a1, a2, a3, a4 = _recurrence_step(m, a, b)
        P, Pm1 = ((a2 + a3 * t) * P - a4 * Pm1) / a1, P
    # derivative through the degree-(n-1) polynomial with shifted exponents
    a1p, b1p = a + 1, b + 1
    Qm1 = np.ones_like(t)
    if n - 1 == 0:
        Q = Qm1
    else:
        Q = 0.5 * ((a1p + b1p + 2.0) * t + a1p - b1p)
        for m in range(1, n - 1):
            a1, a2, a3, a4 = _recurrence_step(m, a1p, b1p)
            Q, Qm1 = ((a2 + a3 * t) * Q - a4 * Qm1) / a1, Q
    return P, 0.5 * (n + a + b + 1) * Q


def gauss_jacobi(p, n: int) -> QuadratureRule:
    """n-point Gauss-Jacobi rule for the weight omega^{(a,b)} on (0,1).

    Nodes are the roots of G_n^{(a,b)}, located by bracketing sign changes
    of P_n^{(a,b)} on a Chebyshev grid and polishing each with Newton's
    method on the three-term recurrence (derivative via the shifted-degree
    identity), tolerance 1e-14, at most 100 iterations.  Weights come from
    the classical formula through log-gamma and must all be positive.
    """
    p = as_params(p)
    a, b = p.a, p.b
    if n < 1:
        raise ValueError(f"gauss_jacobi: need at least one point, got n={n}")

    # Chebyshev-node scan: roots cluster like Chebyshev points, so a
    # modestly oversampled cosine grid brackets all n of them.
    M = 8 * n
    brackets = []
    while True:
        grid = np.cos(np.pi * np.arange(M + 1) / M)[::-1]
        vals, _ = _P_and_dP(n, a, b, grid)
        sign = np.sign(vals)
        idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
        if idx.size == n:
            brackets = [(grid[i], grid[i + 1]) for i in idx]
            break
        M *= 2
        if M > 2 ** 16 * max(n, 1):
            raise QuadratureError(
                f"gauss_jacobi: could not bracket {n} roots for (a={a}, b={b})"
            )

    roots = np.empty(n)
    for i, (lo, hi) in enumerate(brackets):
        t = 0.5 * (lo + hi)
        converged = False
        for _ in range(100):
            val, dval = _P_and_dP(n, a, b, np.array([t]))
            val, dval = val[0], dval[0]
            if dval != 0.0:
                step = val / dval
                tn = t - step
            else:
                tn = 0.5 * (lo + hi)
            if not (lo < tn < hi):
                # Newton left the bracket; fall back to bisection
                if val > 0 and dval > 0 or val < 0 and dval < 0:
                    hi = t
                else:
                    lo = t
                tn = 0.5 * (lo + hi)
            if abs(tn - t) <= 1e-14 * max(1.0, abs(tn)):
                t = tn
                converged = True
                break
            t = tn
        if not converged:
            raise QuadratureError(
                f"gauss_jacobi: Newton failed to converge for root {i} "
                f"of n={n}, (a={a}, b={b})"
            )
        roots[i] = t

    _, dP = _P_and_dP(n, a, b, roots)
    lw = (
        log_gamma(n + a + 1)
        + log_gamma(n + b + 1)
        - log_gamma(n + 1.0)
        - log_gamma(n + a + b + 1)
    )
    weights = math.exp(lw) / ((1.0 - roots ** 2) * dP ** 2)
    if not np.all(weights > 0):
        raise QuadratureError(
            f"gauss_jacobi: nonpositive weight produced for n={n}, (a={a}, b={b})"
        )
    nodes = 0.5 * (roots + 1.0)
    order = np.argsort(nodes)
    return QuadratureRule(p, nodes[order], weights[order])
