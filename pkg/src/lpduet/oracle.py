"""Brute-force ground truth: enumerate every basic solution of an equality form.

Exponential by design; the subset budget keeps it honest. Used to cross-check
both engines on small instances and on the bundled LANA model (C(21,15) =
54,264 bases).
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve, qr

from .errors import TooLarge
from .model import Solution, StandardForm, Status, binding_rows, native_objective, structural_values

MAX_BASES = 10**6
# A basis is rejected as singular when any LU pivot falls below this fraction
# of the submatrix's largest entry.
SINGULAR_RTOL = 1e-10
FEASIBLE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class BasicSolution:
    """One basis and its basic solution; nonbasic entries are exactly zero.

    ``objective`` is in the internal maximize sense (form.c @ x).
    """

    basis: tuple[int, ...]
    x: np.ndarray
    feasible: bool
    objective: float


def _independent_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Indices of a maximal independent row set, or None when A x = b has
    no solution at all (b outside the row space's reach)."""
    rank = int(np.linalg.matrix_rank(a))
    if rank == a.shape[0]:
        return np.arange(a.shape[0])
    if int(np.linalg.matrix_rank(np.column_stack([a, b]))) > rank:
        return None
    _, _, piv = qr(a.T, mode="economic", pivoting=True)
    return np.sort(piv[:rank])


def enumerate_basic_solutions(form: StandardForm) -> Iterator[BasicSolution]:
    """Yield a BasicSolution for every nonsingular basis-sized column subset.

    Redundant equality rows are dropped first (a consistent system keeps a
    maximal independent row set; an inconsistent one has no basic solutions
    and yields nothing), so the basis size is the row rank of A. Subsets come
    in lexicographic column order. Singular bases are skipped; feasibility
    means every basic value is >= -1e-9. Raises TooLarge when the number of
    candidate subsets exceeds MAX_BASES.
    """
    n = form.a.shape[1]
    rows = _independent_rows(form.a, form.b)
    if rows is None:
        return
    a = form.a[rows]
    b = form.b[rows]
    m = a.shape[0]
    if m == 0:
        # A is (numerically) zero and b is consistent: the origin is the
        # only basic solution.
        yield BasicSolution((), np.zeros(n), True, 0.0)
        return
    total = math.comb(n, m) if n >= m else 0
    if total > MAX_BASES:
        raise TooLarge(f"{total} candidate bases exceed the budget of {MAX_BASES}")
    for cols in itertools.combinations(range(n), m):
        sub = a[:, cols]
        scale = float(np.abs(sub).max())
        if scale == 0.0:
            continue
        with warnings.catch_warnings():
            # lu_factor warns on exactly singular submatrices; the pivot
            # check below is the decision we actually use.
            warnings.simplefilter("ignore", LinAlgWarning)
            lu, piv = lu_factor(sub, check_finite=False)
        if float(np.abs(np.diag(lu)).min()) < SINGULAR_RTOL * scale:
            continue
        xb = lu_solve((lu, piv), b, check_finite=False)
        x = np.zeros(n)
        x[list(cols)] = xb
        feasible = bool(xb.min() >= -FEASIBLE_TOL)
        yield BasicSolution(cols, x, feasible, float(form.c @ x))


def brute_force_optimum(form: StandardForm) -> Solution:
    """Best feasible basic solution, or INFEASIBLE when none exists.

    Strict improvement keeps the earlier basis on objective ties, so the
    winner is the lexicographically smallest optimal basis. ``iterations``
    counts the nonsingular bases actually examined.
    """
    best: BasicSolution | None = None
    count = 0
    for cand in enumerate_basic_solutions(form):
        count += 1
        if cand.feasible and (best is None or cand.objective > best.objective):
            best = cand
    if best is None:
        return Solution(Status.INFEASIBLE, None, None, count, ())
    return Solution(
        Status.OPTIMAL,
        structural_values(form, best.x),
        native_objective(form, best.x),
        count,
        binding_rows(form, best.x),
    )
