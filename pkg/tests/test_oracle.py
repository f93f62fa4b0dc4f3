"""Exhaustive basis enumeration against the iterative engines."""

import numpy as np
import numpy.testing as npt
import pytest

from conftest import rng_for, random_bounded_lp
from lpduet import (
    Relation,
    Sense,
    Status,
    TooLarge,
    brute_force_optimum,
    build_model,
    enumerate_basic_solutions,
    solve_simplex,
    to_equality_form,
)


def toy_form():
    m = build_model(
        Sense.MAX,
        ("x", "y"),
        (3.0, 2.0),
        [((1.0, 1.0), Relation.LE, 4.0), ((1.0, 0.0), Relation.LE, 2.0)],
    )
    return to_equality_form(m)


def test_enumerate_toy_bases():
    sols = list(enumerate_basic_solutions(toy_form()))
    # C(4, 2) = 6 subsets; column pair (1, 3) is singular, the rest invert
    assert len(sols) == 5
    assert all(s.basis == tuple(sorted(s.basis)) for s in sols)
    feasible = [s for s in sols if s.feasible]
    assert len(feasible) == 4
    best = max(s.objective for s in feasible)
    assert best == 10.0


def test_enumerate_nonbasic_entries_are_exactly_zero():
    form = toy_form()
    for s in enumerate_basic_solutions(form):
        nonbasic = [j for j in range(form.n_cols) if j not in s.basis]
        assert all(s.x[j] == 0.0 for j in nonbasic)


def test_enumerate_skips_singular_pairs():
    bases = [s.basis for s in enumerate_basic_solutions(toy_form())]
    assert (1, 2) not in bases  # y and the first slack only touch row 0


def test_brute_force_toy():
    sol = brute_force_optimum(toy_form())
    assert sol.status is Status.OPTIMAL
    assert sol.objective == 10.0
    npt.assert_allclose(sol.x, np.array([2.0, 2.0]))


def test_brute_force_keeps_first_optimal_basis_on_ties():
    # every vertex of x + y <= 1 with objective x + y scores 1 except the origin
    m = build_model(
        Sense.MAX, ("x", "y"), (1.0, 1.0), [((1.0, 1.0), Relation.LE, 1.0)]
    )
    form = to_equality_form(m)
    sols = [s for s in enumerate_basic_solutions(form) if s.feasible]
    best = max(s.objective for s in sols)
    first = next(s for s in sols if s.objective == best)
    sol = brute_force_optimum(form)
    assert sol.objective == best
    npt.assert_array_equal(sol.x[: form.n_structural], first.x[: form.n_structural])


def test_brute_force_infeasible():
    m = build_model(
        Sense.MAX,
        ("x",),
        (1.0,),
        [((1.0,), Relation.LE, 1.0), ((1.0,), Relation.GE, 2.0)],
    )
    sol = brute_force_optimum(to_equality_form(m))
    assert sol.status is Status.INFEASIBLE
    assert sol.x is None


def test_brute_force_guards_combinatorial_blowup():
    rng = rng_for(41)
    a = rng.normal(size=(10, 50))
    m = build_model(
        Sense.MAX,
        tuple(f"x{j}" for j in range(50)),
        np.ones(50),
        [(a[i], Relation.LE, 100.0) for i in range(10)],
    )
    with pytest.raises(TooLarge):
        brute_force_optimum(to_equality_form(m))


def test_brute_force_matches_simplex_on_random_instances():
    for i in range(20):
        m = random_bounded_lp(rng_for(900 + i))
        target = solve_simplex(m)
        sol = brute_force_optimum(to_equality_form(m))
        assert target.status is Status.OPTIMAL
        assert sol.status is Status.OPTIMAL
        rel = abs(sol.objective - target.objective) / (1.0 + abs(target.objective))
        assert rel <= 1e-7


def test_brute_force_handles_redundant_equality_rows():
    # three scalings of one equality row make the equality form taller than
    # it is wide; the oracle must still see the vertices
    m = build_model(
        Sense.MAX,
        ("x", "y"),
        (1.0, 1.0),
        [
            ((1.0, 1.0), Relation.EQ, 2.0),
            ((2.0, 2.0), Relation.EQ, 4.0),
            ((3.0, 3.0), Relation.EQ, 6.0),
            ((1.0, 0.0), Relation.LE, 5.0),
        ],
    )
    sol = brute_force_optimum(to_equality_form(m))
    assert sol.status is Status.OPTIMAL
    npt.assert_allclose(sol.objective, 2.0)
    assert solve_simplex(m).status is Status.OPTIMAL


def test_brute_force_detects_contradictory_equality_rows():
    m = build_model(
        Sense.MAX,
        ("x", "y"),
        (1.0, 1.0),
        [
            ((1.0, 1.0), Relation.EQ, 2.0),
            ((2.0, 2.0), Relation.EQ, 5.0),
        ],
    )
    form = to_equality_form(m)
    assert list(enumerate_basic_solutions(form)) == []
    assert brute_force_optimum(form).status is Status.INFEASIBLE
    assert solve_simplex(m).status is Status.INFEASIBLE


def test_brute_force_minimization_sense():
    m = build_model(
        Sense.MIN, ("x", "y"), (1.0, 1.0), [((1.0, 1.0), Relation.GE, 2.0)]
    )
    sol = brute_force_optimum(to_equality_form(m))
    assert sol.status is Status.OPTIMAL
    npt.assert_allclose(sol.objective, 2.0)
