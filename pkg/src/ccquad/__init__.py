"""Closed-form quadrangulation of n-sided patches with a single irregular vertex."""

from .core import (
    AffineExpr,
    FreeParam,
    Mode,
    OutcomeKind,
    PatchSpec,
    PatchValidationError,
    SingularityClass,
    SolveOutcome,
    UnsupportedSideCount,
    check_parity,
    classify,
    satisfies_rows,
)
from .general_solver import enumerate_solutions, feasibility_intervals, solve_general
from .solver import condition_report, solve


def solve_any(spec: PatchSpec, mode: Mode = Mode.STRICT) -> SolveOutcome:
    """Closed forms for n <= 8, propagation beyond."""
    if spec.n > 8:
        return solve_general(spec, mode)
    return solve(spec, mode)


__all__ = [
    "AffineExpr",
    "FreeParam",
    "Mode",
    "OutcomeKind",
    "PatchSpec",
    "PatchValidationError",
    "SingularityClass",
    "SolveOutcome",
    "UnsupportedSideCount",
    "check_parity",
    "classify",
    "condition_report",
    "enumerate_solutions",
    "feasibility_intervals",
    "satisfies_rows",
    "solve",
    "solve_any",
    "solve_general",
]
