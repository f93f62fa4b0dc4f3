"""lpduet: one LP, two engines.

A Big-M tableau simplex and a primal affine-scaling interior point method
over a shared model layer, cross-checked by a brute-force basic-solution
oracle, with a small LP text format and a CLI.
"""

from .errors import (
    DimensionMismatch,
    EmptyModel,
    InfeasibleInterior,
    LpError,
    NonFiniteInput,
    NotInterior,
    NotPositiveDefinite,
    ParseError,
    RankDeficient,
    TooLarge,
    UnboundedDirection,
    ZeroPivot,
)
from .linalg import gram, mat_vec, solve_spd
from .model import (
    BigMForm,
    BigMNumber,
    ColumnKind,
    Constraint,
    LPModel,
    Relation,
    ResidualReport,
    Sense,
    Solution,
    StandardForm,
    Status,
    build_model,
    constraint_residuals,
    evaluate_objective,
    lana_instance,
    to_big_m_form,
    to_equality_form,
)
from .simplex import (
    SimplexOptions,
    Tableau,
    init_tableau,
    pivot,
    select_entering,
    select_leaving,
    solve_simplex,
)
from .affine import (
    DirectionResult,
    IpmOptions,
    IpmState,
    find_interior_point,
    projected_direction,
    scaling_matrix,
    solve_affine,
    step,
)
from .oracle import BasicSolution, brute_force_optimum, enumerate_basic_solutions
from .lp_format import lana_lp_path, parse_lp_text, write_lp_text
from .reporting import (
    IPM_TRACE_HEADER,
    SIMPLEX_TRACE_HEADER,
    SolveReport,
    TraceRow,
    build_report,
    ipm_trace_rows,
    report_as_dict,
    write_iteration_trace,
    write_report_pair,
    write_solution_report,
)
from .cli import run_cli

__version__ = "0.1.0"

__all__ = [
    "BasicSolution",
    "BigMForm",
    "BigMNumber",
    "ColumnKind",
    "Constraint",
    "DimensionMismatch",
    "DirectionResult",
    "EmptyModel",
    "IPM_TRACE_HEADER",
    "InfeasibleInterior",
    "IpmOptions",
    "IpmState",
    "LPModel",
    "LpError",
    "NonFiniteInput",
    "NotInterior",
    "NotPositiveDefinite",
    "ParseError",
    "RankDeficient",
    "Relation",
    "ResidualReport",
    "SIMPLEX_TRACE_HEADER",
    "Sense",
    "SimplexOptions",
    "Solution",
    "SolveReport",
    "StandardForm",
    "Status",
    "Tableau",
    "TooLarge",
    "TraceRow",
    "UnboundedDirection",
    "ZeroPivot",
    "brute_force_optimum",
    "build_model",
    "build_report",
    "constraint_residuals",
    "enumerate_basic_solutions",
    "evaluate_objective",
    "find_interior_point",
    "gram",
    "init_tableau",
    "ipm_trace_rows",
    "lana_instance",
    "lana_lp_path",
    "mat_vec",
    "parse_lp_text",
    "pivot",
    "projected_direction",
    "report_as_dict",
    "run_cli",
    "scaling_matrix",
    "select_entering",
    "select_leaving",
    "solve_affine",
    "solve_simplex",
    "solve_spd",
    "step",
    "to_big_m_form",
    "to_equality_form",
    "write_iteration_trace",
    "write_lp_text",
    "write_report_pair",
    "write_solution_report",
]
