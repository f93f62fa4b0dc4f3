"""Primal affine-scaling interior point engine.

Works on the equality form: maximize c.x subject to A x = b, x > 0 at every
iterate. Each step rescales the problem by D = diag(x), projects the scaled
objective onto the nullspace of A D, and moves a fraction alpha of the way to
the nearest coordinate wall in scaled space:

    x_next = x * (1 + (alpha / |gamma|) * d),   gamma = min(d) < 0

so the smallest scaled component lands exactly at 1 - alpha and the iterate
stays strictly positive. The projector is never materialized; P v is computed
as v - Ahat^T solve_spd(Ahat Ahat^T, Ahat v).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InfeasibleInterior,
    NotInterior,
    NotPositiveDefinite,
    RankDeficient,
    UnboundedDirection,
)
from .linalg import as_matrix, as_vector, gram, solve_spd
from .model import (
    Solution,
    StandardForm,
    Status,
    SLACK,
    SURPLUS,
    binding_rows,
    native_objective,
    structural_values,
)

# Iterate budget for ||A x - b||, relative to 1 + ||b||.
EQUALITY_RTOL = 1e-7
# Phase-1 succeeds once the artificial variable falls below this.
PHASE1_ART_TOL = 1e-8
# Phase 1 keeps its own iteration allowance: a caller running the main loop
# on a tight budget must not see that reported as infeasibility.
PHASE1_MIN_ITER = 500


@dataclass(frozen=True)
class IpmOptions:
    alpha: float = 0.5
    tol: float = 1e-8
    max_iter: int = 500
    ridge: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie strictly between 0 and 1")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.ridge < 0.0:
            raise ValueError("ridge must be nonnegative")


@dataclass(frozen=True, eq=False)
class IpmState:
    """One recorded iterate; objective is in the model's native sense."""

    x: np.ndarray
    iteration: int
    objective: float
    step_norm: float


@dataclass(frozen=True, eq=False)
class DirectionResult:
    """Projected ascent direction in scaled space, with its multipliers.

    ``d`` equals ``reduced`` (the projected scaled gradient); both are kept
    because callers read them in different roles: d as the step direction,
    reduced as the scaled reduced costs for the complementarity stop.
    """

    d: np.ndarray
    dual_y: np.ndarray
    reduced: np.ndarray


def scaling_matrix(x) -> np.ndarray:
    """diag(x) for a strictly positive x."""
    x = as_vector(x)
    if x.size == 0 or float(x.min()) <= 0.0:
        raise NotInterior("scaling point must be strictly positive")
    return np.diag(x)


def projected_direction(a, c, x, ridge: float = 0.0) -> DirectionResult:
    """Project the scaled objective onto the nullspace of A diag(x).

    Solves the normal equations (Ahat Ahat^T) y = Ahat c_tilde through
    solve_spd and returns d = c_tilde - Ahat^T y. One extra projection pass
    runs on the result (the projector is idempotent, so this changes nothing
    mathematically) to keep ||Ahat d|| at rounding level even when the normal
    equations are badly scaled. A factorization failure, after one retry with
    a trace-scaled ridge, means A has dependent rows: RankDeficient.
    """
    a = as_matrix(a)
    c = as_vector(c)
    x = as_vector(x)
    if a.shape[1] != x.shape[0] or c.shape[0] != x.shape[0]:
        raise DimensionMismatch("shapes of A, c and x do not agree")
    if float(x.min()) <= 0.0:
        raise NotInterior("scaling point must be strictly positive")
    ahat = a * x[np.newaxis, :]
    c_tilde = c * x
    s = gram(ahat)
    m = a.shape[0]

    def _solve(rhs: np.ndarray) -> np.ndarray:
        try:
            return solve_spd(s, rhs, ridge)
        except NotPositiveDefinite:
            fallback = 1e-10 * float(np.trace(s)) / max(1, m)
            if fallback <= ridge:
                raise RankDeficient("scaled normal equations are not positive definite") from None
            try:
                return solve_spd(s, rhs, fallback)
            except NotPositiveDefinite:
                raise RankDeficient("scaled normal equations are not positive definite") from None

    y1 = _solve(ahat @ c_tilde)
    d = c_tilde - ahat.T @ y1
    y2 = _solve(ahat @ d)
    d = d - ahat.T @ y2
    return DirectionResult(d=d, dual_y=y1 + y2, reduced=d)


def step(x, d, alpha: float, zero_tol: float = 0.0) -> np.ndarray:
    """One multiplicative affine-scaling step from x along d.

    Returns x unchanged when ||d|| <= zero_tol (converged). Raises
    UnboundedDirection when d has no negative component but is not zero: the
    scaled objective then improves forever without hitting a wall.
    """
    x = as_vector(x)
    d = as_vector(d)
    if x.shape != d.shape:
        raise NotInterior("x and d must have the same length")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly between 0 and 1")
    if float(x.min()) <= 0.0:
        raise NotInterior("step origin must be strictly positive")
    if float(np.linalg.norm(d)) <= zero_tol:
        return x.copy()
    gamma = float(d.min())
    if gamma >= 0.0:
        raise UnboundedDirection("projected direction has no blocking component")
    return x * (1.0 + (alpha / abs(gamma)) * d)


def _least_squares_snap(a: np.ndarray, x: np.ndarray, b: np.ndarray, ridge: float) -> np.ndarray:
    """Minimum-norm correction of x onto A x = b; caller checks positivity."""
    resid = b - a @ x
    y = solve_spd(gram(a), resid, ridge)
    return x + a.T @ y


def find_interior_point(form: StandardForm, opts: IpmOptions | None = None) -> np.ndarray:
    """Phase 1: a strictly positive point on A x = b.

    Starts from a deterministic positive guess (each component 1.0 scaled up
    by mean|b| over its column norm when that helps), appends one artificial
    column carrying the residual b - A x_g at value 1, and runs the affine
    iteration with a large negative weight on that column until it drops
    below PHASE1_ART_TOL. Raises InfeasibleInterior when the artificial
    cannot be driven out.
    """
    opts = opts or IpmOptions()
    a = form.a
    b = form.b
    m, n = a.shape
    col_norms = np.linalg.norm(a, axis=0)
    b_scale = float(np.mean(np.abs(b))) if m else 1.0
    x_g = np.maximum(1.0, b_scale / np.maximum(1.0, col_norms))
    resid = b - a @ x_g
    b_norm = float(np.linalg.norm(b))
    if float(np.linalg.norm(resid)) <= 1e-12 * (1.0 + b_norm):
        return x_g

    a_aug = np.hstack([a, resid[:, np.newaxis]])
    weight = 1e4 * max(1.0, float(np.abs(form.c).max()) if n else 1.0)
    c_aug = np.zeros(n + 1)
    c_aug[-1] = -weight
    x = np.append(x_g, 1.0)
    for _ in range(max(opts.max_iter, PHASE1_MIN_ITER)):
        if x[-1] <= PHASE1_ART_TOL:
            break
        direction = projected_direction(a_aug, c_aug, x, opts.ridge)
        zero_tol = opts.tol * (1.0 + float(np.linalg.norm(x * c_aug)))
        try:
            x_new = step(x, direction.d, opts.alpha, zero_tol)
        except UnboundedDirection:
            # The phase-1 objective is bounded above by zero, so this can
            # only be rounding noise on a stalled direction.
            raise InfeasibleInterior(
                "phase-1 iteration stalled before clearing the artificial column"
            ) from None
        if float(np.linalg.norm(x_new - x)) <= 1e-14 * (1.0 + float(np.linalg.norm(x))):
            break
        x = x_new
    if x[-1] > PHASE1_ART_TOL:
        raise InfeasibleInterior(
            "could not drive the artificial column below tolerance; "
            "no strictly positive feasible point found"
        )
    x0 = x[:-1]
    budget = EQUALITY_RTOL * (1.0 + b_norm)
    if float(np.linalg.norm(b - a @ x0)) > 0.5 * budget:
        snapped = _least_squares_snap(a, x0, b, opts.ridge)
        if float(snapped.min()) > 0.0:
            x0 = snapped
    if float(x0.min()) <= 0.0 or float(np.linalg.norm(b - a @ x0)) > budget:
        raise InfeasibleInterior("phase-1 endpoint is not interior-feasible")
    return x0


def _prepare_start(form: StandardForm, x0, opts: IpmOptions) -> np.ndarray:
    """Lift a caller-supplied start off the boundary and re-project it.

    Components at or near zero (vertex warm starts have exactly-zero slacks)
    are raised to 1e-3 * (1 + |b_row|) before a least-squares snap back onto
    A x = b. Raises NotInterior when the result is unusable.
    """
    x = as_vector(x0).copy()
    if x.shape[0] != form.n_cols:
        raise NotInterior(
            f"start has {x.shape[0]} entries, equality form has {form.n_cols} columns"
        )
    floors = np.empty(form.n_cols)
    for j, kind in enumerate(form.column_kinds):
        ref = abs(float(form.b[kind.index])) if kind.kind in (SLACK, SURPLUS) else 0.0
        floors[j] = 1e-3 * (1.0 + ref)
    x = np.maximum(x, floors)
    x = _least_squares_snap(form.a, x, form.b, opts.ridge)
    b_norm = float(np.linalg.norm(form.b))
    if float(x.min()) <= 0.0:
        raise NotInterior("warm start could not be lifted off the boundary")
    if float(np.linalg.norm(form.b - form.a @ x)) > EQUALITY_RTOL * (1.0 + b_norm):
        raise NotInterior("warm start does not satisfy the equality rows")
    return x


def solve_affine(
    form: StandardForm,
    x0=None,
    opts: IpmOptions | None = None,
) -> tuple[Solution, list[IpmState]]:
    """Run the affine-scaling iteration on an equality form.

    Starts from ``x0`` (lifted and re-projected if it touches the boundary)
    or from the phase-1 point. Stops at the first of: scaled step norm below
    tol, relative objective change below tol, or scaled complementarity below
    tol (optimal); an unblocked ascent ray (unbounded); or max_iter
    (iteration limit). Returns the solution plus the full iterate trace.
    """
    opts = opts or IpmOptions()
    a = form.a
    b = form.b
    c = form.c
    x = find_interior_point(form, opts) if x0 is None else _prepare_start(form, x0, opts)

    b_norm = float(np.linalg.norm(b))
    budget = EQUALITY_RTOL * (1.0 + b_norm)
    obj = float(c @ x)
    trace = [IpmState(x.copy(), 0, -obj if form.negated else obj, math.inf)]
    status = Status.ITERATION_LIMIT
    iterations = 0
    for k in range(1, opts.max_iter + 1):
        direction = projected_direction(a, c, x, opts.ridge)
        zero_tol = opts.tol * (1.0 + float(np.linalg.norm(x * c)))
        try:
            x_new = step(x, direction.d, opts.alpha, zero_tol)
        except UnboundedDirection:
            return Solution(Status.UNBOUNDED, None, None, k, ()), trace
        # Drift control: the multiplicative step preserves A x = b only up to
        # the projection residual, which compounds over hundreds of iterates
        # at large |b|; snap back before it can leave the budget.
        if float(np.linalg.norm(b - a @ x_new)) > 0.25 * budget:
            snapped = _least_squares_snap(a, x_new, b, opts.ridge)
            if float(snapped.min()) > 0.0:
                x_new = snapped
        step_norm = float(np.linalg.norm(x_new - x)) / (1.0 + float(np.linalg.norm(x)))
        obj_new = float(c @ x_new)
        iterations = k
        trace.append(IpmState(x_new.copy(), k, -obj_new if form.negated else obj_new, step_norm))
        comp = float(np.abs(direction.reduced).max())
        converged = (
            step_norm <= opts.tol
            or abs(obj_new - obj) <= opts.tol * (1.0 + abs(obj))
            or comp <= opts.tol * (1.0 + abs(obj))
        )
        x = x_new
        obj = obj_new
        if converged:
            status = Status.OPTIMAL
            break

    solution = Solution(
        status,
        structural_values(form, x),
        native_objective(form, x),
        iterations,
        binding_rows(form, x),
    )
    return solution, trace
