"""Dense kernels shared by both engines: products, Gram matrices, SPD solves."""

from __future__ import annotations

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import DimensionMismatch, NonFiniteInput, NotPositiveDefinite

# Residual target for solve_spd, relative to 1 + ||b||.
RESIDUAL_RTOL = 1e-8
# How symmetric the input of solve_spd must be, relative to its largest entry.
SYMMETRY_RTOL = 1e-10


def as_vector(x) -> np.ndarray:
    """Coerce to a finite 1-D float array."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a vector, got array of shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise NonFiniteInput("vector contains NaN or infinity")
    return v


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite 2-D float array."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got array of shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteInput("matrix contains NaN or infinity")
    return m


def mat_vec(a, x) -> np.ndarray:
    """Product A x with shape validation."""
    a = as_matrix(a)
    x = as_vector(x)
    if a.shape[1] != x.shape[0]:
        raise DimensionMismatch(
            f"matrix has {a.shape[1]} columns but vector has {x.shape[0]} entries"
        )
    return a @ x


def gram(a) -> np.ndarray:
    """A A^T, mirrored from its upper triangle so it is symmetric entry for entry."""
    a = as_matrix(a)
    g = a @ a.T
    return np.triu(g) + np.triu(g, 1).T


def solve_spd(s, b, ridge: float = 0.0) -> np.ndarray:
    """Solve (S + ridge*I) x = b for symmetric positive definite S.

    The system is factored once (Cholesky) and never inverted; up to two
    iterative-refinement passes keep the residual within
    RESIDUAL_RTOL * (1 + ||b||) even for poorly scaled systems. A nonpositive
    pivot raises NotPositiveDefinite, which callers read as rank deficiency
    of the underlying constraint matrix.
    """
    s = as_matrix(s)
    b = as_vector(b)
    n = s.shape[0]
    if s.shape[0] != s.shape[1]:
        raise DimensionMismatch(f"matrix of shape {s.shape} is not square")
    if b.shape[0] != n:
        raise DimensionMismatch(
            f"matrix is {n}x{n} but right-hand side has {b.shape[0]} entries"
        )
    if ridge < 0.0:
        raise ValueError("ridge must be nonnegative")
    scale = float(np.abs(s).max()) if n else 0.0
    if n and float(np.abs(s - s.T).max()) > SYMMETRY_RTOL * max(1.0, scale):
        raise ValueError("matrix is not symmetric to working tolerance")

    work = s if ridge == 0.0 else s + ridge * np.eye(n)
    try:
        factor = cho_factor(work, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from None
    x = cho_solve(factor, b, check_finite=False)
    target = RESIDUAL_RTOL * (1.0 + float(np.linalg.norm(b)))
    for _ in range(2):
        r = b - work @ x
        if float(np.linalg.norm(r)) <= target:
            break
        x = x + cho_solve(factor, r, check_finite=False)
    return x
