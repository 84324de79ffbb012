"""Dense direct linear algebra for the spectral systems.

Matrices are plain row-major numpy arrays (the systems stay at or below
65x65, so there is nothing to gain from sparsity).  Factorization is LU
with partial pivoting; a pivot smaller than 1e-14 times the largest entry
of A is treated as singular and reported with its index.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg


class SingularMatrixError(RuntimeError):
    """Matrix is singular to working precision; names the failing pivot."""


def _checked_factor(A: np.ndarray):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    amax = float(np.max(np.abs(A))) if A.size else 0.0
    with warnings.catch_warnings():
        # scipy warns on exact singularity; the pivot check below reports it
        warnings.simplefilter("ignore")
        lu, piv = scipy.linalg.lu_factor(A)
    pivots = np.abs(np.diag(lu))
    bad = np.nonzero(pivots < 1e-14 * amax)[0] if amax > 0 else np.arange(A.shape[0])
    if bad.size:
        i = int(bad[0])
        raise SingularMatrixError(
            f"matrix is singular to working precision: pivot {i} has magnitude "
            f"{pivots[i] if amax > 0 else 0.0:.3e} (threshold {1e-14 * amax:.3e})"
        )
    return A, lu, piv, amax


def lu_solve(A, rhs) -> tuple[np.ndarray, float]:
    """Solve A x = rhs by LU with partial pivoting.

    Returns the solution together with the reciprocal pivot-growth ratio
    max|A| / max|U|; values near 1 indicate a benign elimination.
    """
    rhs = np.asarray(rhs, dtype=float)
    A, lu, piv, amax = _checked_factor(A)
    if rhs.shape != (A.shape[0],):
        raise ValueError(
            f"rhs length {rhs.shape} does not match matrix order {A.shape[0]}"
        )
    x = scipy.linalg.lu_solve((lu, piv), rhs)
    umax = float(np.max(np.abs(np.triu(lu))))
    return x, amax / umax


def lu_factors(A) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Permutation, unit-lower and upper factors with P @ A = L @ U."""
    A, _, _, _ = _checked_factor(A)
    P, L, U = scipy.linalg.lu(A)
    return P.T, L, U


def condition_estimate(A) -> float:
    """1-norm condition number estimate from the LU factors (LAPACK gecon)."""
    A, lu, piv, _ = _checked_factor(A)
    anorm = float(np.linalg.norm(A, 1))
    rcond, info = scipy.linalg.lapack.dgecon(lu, anorm, norm="1")
    if info != 0:
        raise RuntimeError(f"condition estimate failed with LAPACK info {info}")
    return float("inf") if rcond == 0.0 else 1.0 / float(rcond)
