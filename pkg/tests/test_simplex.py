"""Tableau mechanics on hand-worked pivots plus end-to-end solves."""

import numpy as np
import numpy.testing as npt
import pytest

from conftest import rng_for, random_bounded_lp
from lpduet import (
    Relation,
    Sense,
    SimplexOptions,
    Status,
    ZeroPivot,
    build_model,
    lana_instance,
    solve_simplex,
)
from lpduet.model import to_big_m_form
from lpduet.simplex import BLAND, init_tableau, pivot, select_entering, select_leaving


def toy_model():
    return build_model(
        Sense.MAX,
        ("x", "y"),
        (3.0, 2.0),
        [((1.0, 1.0), Relation.LE, 4.0), ((1.0, 0.0), Relation.LE, 2.0)],
    )


def finite_row(t):
    return tuple(bm.finite for bm in t.obj_row)


def test_init_tableau_toy():
    t = init_tableau(to_big_m_form(toy_model()))
    assert t.basis == (2, 3)
    npt.assert_array_equal(t.rhs, np.array([4.0, 2.0]))
    assert finite_row(t) == (-3.0, -2.0, 0.0, 0.0)
    assert all(bm.m_coeff == 0.0 for bm in t.obj_row)
    assert t.obj_value.finite == 0.0


def test_toy_pivots_by_hand():
    opts = SimplexOptions()
    t = init_tableau(to_big_m_form(toy_model()))

    col = select_entering(t, opts)
    assert col == 0
    row = select_leaving(t, col, opts)
    assert row == 1
    t = pivot(t, row, col)
    assert t.basis == (2, 0)
    assert finite_row(t) == (0.0, -2.0, 0.0, 3.0)
    assert t.obj_value.finite == 6.0
    npt.assert_array_equal(t.rhs, np.array([2.0, 2.0]))

    col = select_entering(t, opts)
    assert col == 1
    row = select_leaving(t, col, opts)
    assert row == 0
    t = pivot(t, row, col)
    assert t.basis == (1, 0)
    assert finite_row(t) == (0.0, 0.0, 2.0, 1.0)
    assert t.obj_value.finite == 10.0

    assert select_entering(t, opts) is None


def test_pivot_cleans_basic_columns_exactly():
    t = init_tableau(to_big_m_form(toy_model()))
    t = pivot(t, 1, 0)
    npt.assert_array_equal(t.body[:, 0], np.array([0.0, 1.0]))
    assert t.obj_row[0].finite == 0.0 and t.obj_row[0].m_coeff == 0.0


def test_pivot_rejects_tiny_element():
    t = init_tableau(to_big_m_form(toy_model()))
    with pytest.raises(ZeroPivot):
        pivot(t, 1, 1)  # body[1, 1] is 0


def test_select_leaving_breaks_ties_by_basic_index():
    m = build_model(
        Sense.MAX,
        ("x",),
        (1.0,),
        [((1.0,), Relation.LE, 2.0), ((1.0,), Relation.LE, 2.0)],
    )
    t = init_tableau(to_big_m_form(m))
    assert select_leaving(t, 0, SimplexOptions()) == 0


def test_solve_toy():
    sol = solve_simplex(toy_model())
    assert sol.status is Status.OPTIMAL
    assert sol.objective == 10.0
    npt.assert_allclose(sol.x, np.array([2.0, 2.0]))
    assert sol.binding == (0, 1)


def test_solve_lana():
    sol = solve_simplex(lana_instance())
    assert sol.status is Status.OPTIMAL
    npt.assert_allclose(sol.objective, 765056.25, rtol=1e-9)
    assert sol.iterations <= 100
    expected = np.array(
        [15025.944987, 37537.027507, 8800.0, 2200.0, 61487.027507, 2200.0]
    )
    npt.assert_allclose(sol.x, expected, rtol=1e-6)
    assert 4 in sol.binding  # the profit cap is attained


def test_solve_lana_with_bland_rule():
    sol = solve_simplex(lana_instance(), SimplexOptions(anti_cycling=BLAND))
    assert sol.status is Status.OPTIMAL
    npt.assert_allclose(sol.objective, 765056.25, rtol=1e-9)


def test_minimization():
    m = build_model(
        Sense.MIN, ("x", "y"), (1.0, 1.0), [((1.0, 1.0), Relation.GE, 2.0)]
    )
    sol = solve_simplex(m)
    assert sol.status is Status.OPTIMAL
    npt.assert_allclose(sol.objective, 2.0)


def test_unbounded():
    m = build_model(Sense.MAX, ("x",), (1.0,), [((1.0,), Relation.GE, 1.0)])
    sol = solve_simplex(m)
    assert sol.status is Status.UNBOUNDED
    assert sol.x is None
    assert sol.objective is None


def test_infeasible():
    m = build_model(
        Sense.MAX,
        ("x",),
        (1.0,),
        [((1.0,), Relation.LE, 1.0), ((1.0,), Relation.GE, 2.0)],
    )
    sol = solve_simplex(m)
    assert sol.status is Status.INFEASIBLE


def test_iteration_limit():
    sol = solve_simplex(lana_instance(), SimplexOptions(max_pivots=1))
    assert sol.status is Status.ITERATION_LIMIT
    assert sol.iterations == 1


def test_on_pivot_callback_sees_every_pivot():
    seen = []
    sol = solve_simplex(toy_model(), on_pivot=lambda *args: seen.append(args))
    assert len(seen) == sol.iterations == 2
    counts = [row[0] for row in seen]
    assert counts == [1, 2]
    assert seen[-1][3] == 10.0  # finite objective after the last pivot


def test_objective_monotone_over_random_instances():
    for i in range(20):
        m = random_bounded_lp(rng_for(600 + i))
        objs = []
        sol = solve_simplex(m, on_pivot=lambda k, e, l, fin, mc: objs.append((mc, fin)))
        assert sol.status is Status.OPTIMAL
        for prev, cur in zip(objs, objs[1:]):
            slack = 1e-9 * (1.0 + abs(prev[1])) + 1e-12
            if cur[0] > prev[0] + 1e-12:
                continue
            assert abs(cur[0] - prev[0]) <= 1e-12
            assert cur[1] >= prev[1] - slack


def test_degenerate_model_still_terminates():
    # two identical rows force a degenerate vertex
    m = build_model(
        Sense.MAX,
        ("x", "y"),
        (1.0, 1.0),
        [
            ((1.0, 1.0), Relation.LE, 1.0),
            ((1.0, 1.0), Relation.LE, 1.0),
            ((1.0, 0.0), Relation.GE, 0.0),
        ],
    )
    sol = solve_simplex(m)
    assert sol.status is Status.OPTIMAL
    npt.assert_allclose(sol.objective, 1.0)
