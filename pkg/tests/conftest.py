"""Shared fixtures and seeded random-model generators for the test suite.

Set LPDUET_SEED to reseed every randomized path; runs are deterministic for a
given seed.
"""

import os

import numpy as np
import pytest

from lpduet import LPModel, Relation, Sense, build_model, lana_instance

SEED = int(os.environ.get("LPDUET_SEED", "20250822"))


def rng_for(tag: int) -> np.random.Generator:
    """Independent deterministic stream per test case."""
    return np.random.default_rng((SEED, tag))


def random_bounded_lp(rng: np.random.Generator, max_vars: int = 6, max_rows: int = 6) -> LPModel:
    """A feasible bounded maximization LP.

    Feasibility: rows are anchored at a strictly positive witness point.
    Boundedness: the first row caps the variable sum, and x >= 0 does the rest.
    """
    n = int(rng.integers(1, max_vars + 1))
    witness = rng.uniform(0.5, 3.0, n)
    rows = [(np.ones(n), Relation.LE, float(witness.sum() * rng.uniform(1.5, 3.0)))]
    for _ in range(int(rng.integers(0, max_rows))):
        coeffs = rng.uniform(-2.0, 2.0, n)
        anchored = float(coeffs @ witness)
        margin = float(rng.uniform(0.1, 2.0))
        pick = rng.random()
        if pick < 0.45:
            rows.append((coeffs, Relation.LE, anchored + margin))
        elif pick < 0.9:
            rows.append((coeffs, Relation.GE, anchored - margin))
        else:
            rows.append((coeffs, Relation.EQ, anchored))
    rows = rows[: max_rows]
    c = rng.uniform(-3.0, 3.0, n)
    names = tuple(f"x{j + 1}" for j in range(n))
    return build_model(Sense.MAX, names, c, rows)


def random_infeasible_lp(rng: np.random.Generator) -> LPModel:
    """Two parallel rows with an empty gap between them, plus filler."""
    n = int(rng.integers(1, 5))
    coeffs = rng.uniform(0.5, 2.0, n)
    level = float(rng.uniform(1.0, 10.0))
    gap = float(rng.uniform(0.5, 5.0))
    rows = [
        (coeffs, Relation.LE, level),
        (coeffs.copy(), Relation.GE, level + gap),
    ]
    for _ in range(int(rng.integers(0, 3))):
        rows.append((rng.uniform(-1.0, 1.0, n), Relation.LE, float(rng.uniform(5.0, 20.0))))
    names = tuple(f"x{j + 1}" for j in range(n))
    return build_model(Sense.MAX, names, rng.uniform(-2.0, 2.0, n), rows)


def random_unbounded_lp(rng: np.random.Generator) -> LPModel:
    """Positive objective with only lower bounds: every ray improves."""
    n = int(rng.integers(1, 5))
    rows = []
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        rows.append((e, Relation.GE, float(rng.uniform(0.0, 5.0))))
    names = tuple(f"x{j + 1}" for j in range(n))
    return build_model(Sense.MAX, names, rng.uniform(0.5, 3.0, n), rows)


@pytest.fixture(scope="session")
def lana():
    return lana_instance()
