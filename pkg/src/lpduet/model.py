"""LP model types, validation, and conversion to equality / Big-M form.

Models are stored in a canonical shape: every right-hand side is nonnegative
(rows arriving with a negative rhs are sign flipped at build time, relation
reversed) and the internal solver sense is always maximization. Minimization
models keep their native objective here; the equality-form conversion negates
it and records a flag so reported objectives can be un-negated at the boundary.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, EmptyModel, NonFiniteInput
from .linalg import as_vector


class Sense(Enum):
    MAX = "max"
    MIN = "min"


class Relation(Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class Status(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"


_FLIPPED = {Relation.LE: Relation.GE, Relation.GE: Relation.LE, Relation.EQ: Relation.EQ}

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Column roles in the equality / Big-M forms.
STRUCTURAL = "structural"
SLACK = "slack"
SURPLUS = "surplus"
ARTIFICIAL = "artificial"

# Default feasibility tolerance, scaled per row by (1 + |rhs|).
FEASIBILITY_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class Constraint:
    """One linear constraint: coeffs . x  (<= | >= | =)  rhs."""

    name: str
    coeffs: np.ndarray
    relation: Relation
    rhs: float

    def __eq__(self, other):
        if not isinstance(other, Constraint):
            return NotImplemented
        return (
            self.name == other.name
            and self.relation is other.relation
            and self.rhs == other.rhs
            and np.array_equal(self.coeffs, other.coeffs)
        )


@dataclass(frozen=True, eq=False)
class LPModel:
    """A validated LP in canonical shape (rhs >= 0, native sense preserved)."""

    sense: Sense
    variable_names: tuple[str, ...]
    objective: np.ndarray
    constraints: tuple[Constraint, ...]

    @property
    def n_vars(self) -> int:
        return len(self.variable_names)

    @property
    def n_constraints(self) -> int:
        return len(self.constraints)

    def __eq__(self, other):
        if not isinstance(other, LPModel):
            return NotImplemented
        return (
            self.sense is other.sense
            and self.variable_names == other.variable_names
            and np.array_equal(self.objective, other.objective)
            and self.constraints == other.constraints
        )


def _coerce_sense(sense) -> Sense:
    if isinstance(sense, Sense):
        return sense
    return Sense(str(sense).lower())


def _coerce_relation(rel) -> Relation:
    if isinstance(rel, Relation):
        return rel
    return Relation(str(rel))


def build_model(sense, names, objective, constraints) -> LPModel:
    """Validate and canonicalize a model.

    ``constraints`` is an iterable of Constraint objects or
    (coeffs, relation, rhs) tuples; unnamed rows get names c1, c2, ...
    Rows with a negative rhs are multiplied by -1 with the relation flipped,
    so the stored model always has b >= 0.
    """
    sense = _coerce_sense(sense)
    names = tuple(str(n) for n in names)
    if not names:
        raise EmptyModel("model has no variables")
    for name in names:
        if not _NAME_RE.match(name):
            raise ValueError(f"invalid variable name {name!r}")
    if len(set(names)) != len(names):
        raise ValueError("variable names are not unique")

    objective = as_vector(objective)
    if objective.shape[0] != len(names):
        raise DimensionMismatch(
            f"objective has {objective.shape[0]} coefficients for {len(names)} variables"
        )

    rows: list[Constraint] = []
    seen: set[str] = set()
    for k, item in enumerate(constraints):
        if isinstance(item, Constraint):
            name, coeffs, relation, rhs = item.name, item.coeffs, item.relation, item.rhs
        elif len(item) == 4:
            name, coeffs, relation, rhs = item
        else:
            coeffs, relation, rhs = item
            name = f"c{k + 1}"
        name = str(name)
        if not _NAME_RE.match(name) or name in ("max", "min"):
            raise ValueError(f"invalid constraint name {name!r}")
        if name in seen:
            raise ValueError(f"duplicate constraint name {name!r}")
        seen.add(name)
        coeffs = as_vector(coeffs)
        if coeffs.shape[0] != len(names):
            raise DimensionMismatch(
                f"constraint {name!r} has {coeffs.shape[0]} coefficients "
                f"for {len(names)} variables"
            )
        relation = _coerce_relation(relation)
        rhs = float(rhs)
        if not np.isfinite(rhs):
            raise NonFiniteInput(f"constraint {name!r} has a non-finite rhs")
        if rhs < 0.0:
            coeffs = -coeffs
            relation = _FLIPPED[relation]
            rhs = -rhs
        rows.append(Constraint(name, coeffs, relation, rhs + 0.0))
    if not rows:
        raise EmptyModel("model has no constraints")
    return LPModel(sense, names, objective, tuple(rows))


def lana_instance() -> LPModel:
    """The bundled LANA production-planning model (six products, 15 rows)."""
    profit = (8.073, 6.398, 3.9965, 5.943, 5.52175, 7.1955)
    rows = [
        ("total_min", (1, 1, 1, 1, 1, 1), Relation.GE, 74500),
        ("total_max", (1, 1, 1, 1, 1, 1), Relation.LE, 130000),
        ("revenue_min", (29.601, 19.194, 21.5811, 22.923, 21.2375, 19.188),
         Relation.GE, 1823806.45),
        ("profit_min", profit, Relation.GE, 467663.125),
        ("profit_cap", profit, Relation.LE, 765056.25),
        ("line_a_cap", (0.5, 1, 0.5, 0.25, 0, 0), Relation.LE, 50000),
        ("line_b_cap", (0.25, 0, 0.25, 0.25, 0.5, 0), Relation.LE, 40000),
        ("line_c_cap", (0.25, 0, 0.25, 0.5, 0.5, 1), Relation.LE, 40000),
        ("k1_min", (1, 0, 0, 0, 0, 0), Relation.GE, 11000),
        ("k2_min", (0, 1, 0, 0, 0, 0), Relation.GE, 2200),
        ("k3_min", (0, 0, 1, 0, 0, 0), Relation.GE, 8800),
        ("k4_min", (0, 0, 0, 1, 0, 0), Relation.GE, 2200),
        ("k5_min", (0, 0, 0, 0, 1, 0), Relation.GE, 4400),
        ("k6_min", (0, 0, 0, 0, 0, 1), Relation.GE, 2200),
        ("k6_max", (0, 0, 0, 0, 0, 1), Relation.LE, 6500),
    ]
    return build_model(Sense.MAX, ("K1", "K2", "K3", "K4", "K5", "K6"), profit, rows)


def evaluate_objective(model: LPModel, x) -> float:
    """Objective value c . x in the model's native sense."""
    x = as_vector(x)
    if x.shape[0] != model.n_vars:
        raise DimensionMismatch(
            f"point has {x.shape[0]} entries for {model.n_vars} variables"
        )
    return float(model.objective @ x)


class ResidualReport(NamedTuple):
    residuals: np.ndarray
    feasible: bool
    binding: tuple[int, ...]


def constraint_residuals(model: LPModel, x, tol: float = FEASIBILITY_TOL) -> ResidualReport:
    """Per-row slack toward each constraint, plus feasibility and binding rows.

    Residuals are oriented so nonnegative means satisfied: rhs - lhs for <=,
    lhs - rhs for >=, and |lhs - rhs| for equalities (which must stay within
    tolerance). The per-row tolerance is tol * (1 + |rhs|); x itself must be
    >= -tol entrywise.
    """
    x = as_vector(x)
    if x.shape[0] != model.n_vars:
        raise DimensionMismatch(
            f"point has {x.shape[0]} entries for {model.n_vars} variables"
        )
    residuals = np.empty(model.n_constraints)
    feasible = bool(np.all(x >= -tol))
    binding: list[int] = []
    for i, con in enumerate(model.constraints):
        lhs = float(con.coeffs @ x)
        if con.relation is Relation.LE:
            r = con.rhs - lhs
        elif con.relation is Relation.GE:
            r = lhs - con.rhs
        else:
            r = abs(lhs - con.rhs)
        residuals[i] = r
        row_tol = tol * (1.0 + abs(con.rhs))
        if con.relation is Relation.EQ:
            if r > row_tol:
                feasible = False
        elif r < -row_tol:
            feasible = False
        if abs(r) <= row_tol:
            binding.append(i)
    return ResidualReport(residuals, feasible, tuple(binding))


@dataclass(frozen=True)
class ColumnKind:
    """Role of one equality-form column.

    ``index`` is the original variable index for structural columns and the
    owning row index for slack, surplus and artificial columns.
    """

    kind: str
    index: int


@dataclass(frozen=True, eq=False)
class StandardForm:
    """Equality form A x = b, x >= 0 with the objective in maximize sense."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    column_kinds: tuple[ColumnKind, ...]
    row_origin: tuple[int, ...]
    negated: bool

    @property
    def n_rows(self) -> int:
        return self.a.shape[0]

    @property
    def n_cols(self) -> int:
        return self.a.shape[1]

    @property
    def n_structural(self) -> int:
        return sum(1 for k in self.column_kinds if k.kind == STRUCTURAL)


def to_equality_form(model: LPModel) -> StandardForm:
    """Append one slack (<=) or surplus (>=) column per inequality row.

    Added columns come after the structural block, in row order. Equality
    rows add nothing. A minimize objective is negated here (flag recorded)
    so downstream code always maximizes.
    """
    n = model.n_vars
    m = model.n_constraints
    extra = sum(1 for c in model.constraints if c.relation is not Relation.EQ)
    total = n + extra
    a = np.zeros((m, total))
    b = np.empty(m)
    kinds = [ColumnKind(STRUCTURAL, j) for j in range(n)]
    col = n
    for i, con in enumerate(model.constraints):
        a[i, :n] = con.coeffs
        b[i] = con.rhs
        if con.relation is Relation.LE:
            a[i, col] = 1.0
            kinds.append(ColumnKind(SLACK, i))
            col += 1
        elif con.relation is Relation.GE:
            a[i, col] = -1.0
            kinds.append(ColumnKind(SURPLUS, i))
            col += 1
    c = np.zeros(total)
    negated = model.sense is Sense.MIN
    c[:n] = -model.objective if negated else model.objective
    return StandardForm(a, b, c, tuple(kinds), tuple(range(m)), negated)


@functools.total_ordering
@dataclass(frozen=True)
class BigMNumber:
    """A value finite + m_coeff * M for a symbolically infinite penalty M.

    Ordering is lexicographic: m_coeff decides first, the finite part breaks
    ties. Supports addition, subtraction, negation and scalar scaling; M is
    never replaced by a numeric constant.
    """

    finite: float
    m_coeff: float = 0.0

    def __post_init__(self):
        # arithmetic upstream may hand in numpy scalars; pin plain floats so
        # reprs and comparisons behave the same everywhere
        object.__setattr__(self, "finite", float(self.finite))
        object.__setattr__(self, "m_coeff", float(self.m_coeff))

    def __add__(self, other: "BigMNumber") -> "BigMNumber":
        return BigMNumber(self.finite + other.finite, self.m_coeff + other.m_coeff)

    def __sub__(self, other: "BigMNumber") -> "BigMNumber":
        return BigMNumber(self.finite - other.finite, self.m_coeff - other.m_coeff)

    def __neg__(self) -> "BigMNumber":
        return BigMNumber(-self.finite, -self.m_coeff)

    def __mul__(self, scalar) -> "BigMNumber":
        s = float(scalar)
        return BigMNumber(self.finite * s, self.m_coeff * s)

    __rmul__ = __mul__

    def __lt__(self, other: "BigMNumber") -> bool:
        return (self.m_coeff, self.finite) < (other.m_coeff, other.finite)


@dataclass(frozen=True, eq=False)
class BigMForm:
    """Equality form extended with artificial columns for >= and = rows.

    ``a_full`` is the assembled matrix [A | artificial identity block];
    ``artificial_cols`` lists (column, row) pairs; ``objective`` gives every
    column's cost as a BigMNumber (artificials carry m_coeff = -1).
    """

    base: StandardForm
    a_full: np.ndarray
    artificial_cols: tuple[tuple[int, int], ...]
    objective: tuple[BigMNumber, ...]

    @property
    def column_kinds(self) -> tuple[ColumnKind, ...]:
        return self.base.column_kinds + tuple(
            ColumnKind(ARTIFICIAL, row) for _, row in self.artificial_cols
        )

    def starting_basis(self) -> tuple[int, ...]:
        """Per row: the slack column for <= rows, the artificial otherwise."""
        by_row: dict[int, int] = {}
        for j, kind in enumerate(self.base.column_kinds):
            if kind.kind == SLACK:
                by_row[kind.index] = j
        for col, row in self.artificial_cols:
            by_row[row] = col
        return tuple(by_row[i] for i in range(self.base.n_rows))


def to_big_m_form(model: LPModel) -> BigMForm:
    """Build the Big-M starting structure over the equality form.

    Every >= or = row receives one artificial column (unit entry on its row)
    so the slack and artificial columns together hold an exact identity
    submatrix, giving the simplex engine its starting basis.
    """
    base = to_equality_form(model)
    art_rows = [
        i for i, con in enumerate(model.constraints) if con.relation is not Relation.LE
    ]
    m, n0 = base.a.shape
    a_full = np.zeros((m, n0 + len(art_rows)))
    a_full[:, :n0] = base.a
    artificial = []
    for k, row in enumerate(art_rows):
        a_full[row, n0 + k] = 1.0
        artificial.append((n0 + k, row))
    objective = [BigMNumber(float(cj)) for cj in base.c]
    objective.extend(BigMNumber(0.0, -1.0) for _ in art_rows)
    return BigMForm(base, a_full, tuple(artificial), tuple(objective))


@dataclass(frozen=True, eq=False)
class Solution:
    """Result of one engine run.

    ``x`` holds the structural variables (None when the status carries no
    point), ``objective`` is in the model's native sense, and ``binding``
    lists original constraint indices whose residual is within tolerance.
    """

    status: Status
    x: np.ndarray | None
    objective: float | None
    iterations: int
    binding: tuple[int, ...]


def structural_values(form: StandardForm, x_full) -> np.ndarray:
    """Extract the original variables from an equality-form point."""
    x_full = as_vector(x_full)
    out = np.zeros(form.n_structural)
    for j, kind in enumerate(form.column_kinds):
        if kind.kind == STRUCTURAL:
            out[kind.index] = x_full[j]
    return out


def native_objective(form: StandardForm, x_full) -> float:
    """Objective of an equality-form point, un-negated to the native sense."""
    value = float(form.c @ np.asarray(x_full, dtype=float))
    return -value if form.negated else value


def binding_rows(form: StandardForm, x_full, tol: float = FEASIBILITY_TOL) -> tuple[int, ...]:
    """Original row indices whose slack or surplus is within tolerance of zero.

    Equality rows are always binding. The per-row tolerance is scaled by
    (1 + |b_row|), matching constraint_residuals.
    """
    x_full = np.asarray(x_full, dtype=float)
    slack_col: dict[int, int] = {}
    for j, kind in enumerate(form.column_kinds):
        if kind.kind in (SLACK, SURPLUS):
            slack_col[kind.index] = j
    out = []
    for i in range(form.n_rows):
        j = slack_col.get(i)
        if j is None or abs(x_full[j]) <= tol * (1.0 + abs(form.b[i])):
            out.append(form.row_origin[i])
    return tuple(out)
