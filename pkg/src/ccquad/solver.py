"""Closed-form single-singularity quadrangulation test for 2 <= n <= 8.

Each side count has its own explicit formula; nothing here iterates or
propagates. :mod:`ccquad.general_solver` covers every ``n`` with one
uniform algorithm and is tested for agreement with this module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import (
    AffineExpr,
    EqualitySystemViolation,
    FailureReason,
    FreeParam,
    InequalityViolation,
    Mode,
    OutcomeKind,
    ParityViolation,
    PatchSpec,
    PatchValidationError,
    SolveOutcome,
    SubsetParityViolation,
    UnsupportedSideCount,
    check_parity,
    validate,
)

MAX_CLOSED_FORM_N = 8


# Signed coefficient patterns for 2*s_i, as offsets from i. Entry (d, c)
# contributes c * e[i + d].
_UNIQUE_FORMS: dict[int, tuple[tuple[int, int], ...]] = {
    3: ((-1, 1), (0, -1), (1, 1)),
    5: ((-1, 1), (0, 1), (1, 1), (-2, -1), (2, -1)),
    6: ((-1, 1), (1, 1), (3, -1)),
    7: ((-2, 1), (-1, 1), (1, 1), (2, 1), (0, -1), (3, -1), (-3, -1)),
}


def _unique_terms(spec: PatchSpec, i: int) -> tuple[int, int]:
    """Positive and negative parts of twice the closed-form spoke ``s_i``."""
    if spec.n == 2:
        # e_0 = 2 s_1 and e_1 = 2 s_0
        return spec.e(i + 1), 0
    lhs = rhs = 0
    for d, c in _UNIQUE_FORMS[spec.n]:
        if c > 0:
            lhs += spec.e(i + d)
        else:
            rhs += spec.e(i + d)
    return lhs, rhs


def _subset_sums(spec: PatchSpec) -> dict[str, int]:
    return {
        "even": sum(spec.edges[0::2]),
        "odd": sum(spec.edges[1::2]),
    }


def _equality_sides(spec: PatchSpec, subset: str) -> tuple[int, int]:
    r = 0 if subset == "even" else 1
    lhs = sum(e for i, e in enumerate(spec.edges) if i % 4 == r)
    rhs = sum(e for i, e in enumerate(spec.edges) if i % 4 == r + 2)
    return lhs, rhs


def _family_bounds(spec: PatchSpec) -> tuple[tuple[list, list], tuple[list, list]]:
    """Open lower/upper bounds on (k0, k1), each tagged with its spoke.

    n = 8: ``max(0, e1 - e3) < k0 < min(e1, e7)`` and
    ``max(0, e2 - e4) < k1 < min(e2, e0)``. n = 4: ``0 < k0 < e1`` and
    ``0 < k1 < e2``.
    """
    e = spec.e
    if spec.n == 4:
        k0 = ([(0, 0)], [(e(1), 2)])
        k1 = ([(0, 1)], [(e(2), 3)])
    else:
        k0 = ([(0, 0), (e(1) - e(3), 4)], [(e(1), 2), (e(7), 6)])
        k1 = ([(0, 1), (e(2) - e(4), 5)], [(e(2), 3), (e(0), 7)])
    return k0, k1


def _family_rule(spec: PatchSpec) -> tuple[AffineExpr, ...]:
    e = spec.e
    if spec.n == 4:
        return (
            AffineExpr(0, 1, 0),
            AffineExpr(0, 1, 1),
            AffineExpr(e(1), -1, 0),
            AffineExpr(e(2), -1, 1),
        )
    return (
        AffineExpr(0, 1, 0),
        AffineExpr(0, 1, 1),
        AffineExpr(e(1), -1, 0),
        AffineExpr(e(2), -1, 1),
        AffineExpr(e(3) - e(1), 1, 0),
        AffineExpr(e(4) - e(2), 1, 1),
        AffineExpr(e(7), -1, 0),
        AffineExpr(e(0), -1, 1),
    )


def _check_supported(spec: PatchSpec, mode: Mode) -> None:
    problems = validate(spec, mode)
    if problems:
        raise PatchValidationError(problems)
    if spec.n > MAX_CLOSED_FORM_N:
        raise UnsupportedSideCount(
            f"closed forms cover n <= {MAX_CLOSED_FORM_N}; "
            f"use ccquad.general_solver.solve_general for n = {spec.n}"
        )


def solve(spec: PatchSpec, mode: Mode = Mode.STRICT) -> SolveOutcome:
    """Decide whether ``spec`` admits a single-singularity quadrangulation.

    Parameters
    ----------
    spec : PatchSpec
        Side edge counts, ``2 <= n <= 8``.
    mode : Mode
        ``STRICT`` keeps the irregular vertex in the interior; ``NONSTRICT``
        also admits it on the boundary or on a corner.

    Returns
    -------
    SolveOutcome
        ``UNIQUE`` for n in {2, 3, 5, 6, 7}, ``FAMILY`` for n in {4, 8}, or
        ``INFEASIBLE`` listing every violated condition.

    Raises
    ------
    PatchValidationError
        Fewer than two sides, or a side below the mode's edge minimum.
    UnsupportedSideCount
        ``n > 8``.
    """
    mode = Mode.parse(mode)
    _check_supported(spec, mode)
    n = spec.n
    reasons: list[FailureReason] = []

    if not check_parity(spec):
        reasons.append(ParityViolation(total=sum(spec.edges)))

    if n % 4 == 0:
        for subset in ("even", "odd"):
            lhs, rhs = _equality_sides(spec, subset)
            if lhs != rhs:
                reasons.append(EqualitySystemViolation(subset=subset, lhs=lhs, rhs=rhs))
        if reasons:
            return SolveOutcome(OutcomeKind.INFEASIBLE, spec, mode, reasons=tuple(reasons))
        params = []
        for lowers, uppers in _family_bounds(spec):
            lo = max(b for b, _ in lowers)
            hi = min(b for b, _ in uppers)
            params.append(FreeParam(lo, hi, open_bounds=mode is Mode.STRICT))
        for p, (lowers, uppers) in zip(params, _family_bounds(spec)):
            if len(p) == 0:
                # unreachable for valid input (the bounds always leave room),
                # kept so a broken precondition surfaces as a reason
                k_min = p.inclusive()[0]
                hi, spoke = min(uppers)
                reasons.append(InequalityViolation(index=spoke, lhs=hi, rhs=k_min))
        if reasons:
            return SolveOutcome(OutcomeKind.INFEASIBLE, spec, mode, reasons=tuple(reasons))
        return SolveOutcome(
            OutcomeKind.FAMILY,
            spec,
            mode,
            params=(params[0], params[1]),
            rule=_family_rule(spec),
            tessellation_equivalent=(n == 4),
        )

    if n % 2 == 0:
        for subset, total in _subset_sums(spec).items():
            if total % 2:
                reasons.append(SubsetParityViolation(subset=subset, total=total))

    doubled = []
    for i in range(n):
        lhs, rhs = _unique_terms(spec, i)
        twice = lhs - rhs
        doubled.append(twice)
        ok = twice > 0 if mode is Mode.STRICT else twice >= 0
        if not ok:
            reasons.append(InequalityViolation(index=i, lhs=lhs, rhs=rhs))
    if reasons:
        return SolveOutcome(OutcomeKind.INFEASIBLE, spec, mode, reasons=tuple(reasons))

    assert all(t % 2 == 0 for t in doubled), "parity checks must make halving exact"
    return SolveOutcome(
        OutcomeKind.UNIQUE, spec, mode, solution=tuple(t // 2 for t in doubled)
    )


# ---------------------------------------------------------------------------
# diagnostics


class Status(enum.Enum):
    SATISFIED_STRICTLY = "satisfied"
    SATISFIED_AS_EQUALITY = "equality"
    VIOLATED = "violated"


@dataclass(frozen=True)
class ConditionStatus:
    """One evaluated condition.

    ``condition`` names the family of check (``edge_minimum``, ``parity``,
    ``subset_parity``, ``inequality``, ``equality``, ``interval``) and
    ``index`` the side, spoke, subset or parameter it concerns.
    """

    condition: str
    index: int | str | None
    lhs: int
    rhs: int
    relation: str
    status: Status

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "index": self.index,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "status": self.status.value,
        }


def _ineq(name, index, lhs, rhs, relation=">") -> ConditionStatus:
    if lhs > rhs:
        st = Status.SATISFIED_STRICTLY
    elif lhs == rhs:
        st = Status.SATISFIED_AS_EQUALITY
    else:
        st = Status.VIOLATED
    return ConditionStatus(name, index, lhs, rhs, relation, st)


def _eq(name, index, lhs, rhs, relation="==") -> ConditionStatus:
    st = Status.SATISFIED_STRICTLY if lhs == rhs else Status.VIOLATED
    return ConditionStatus(name, index, lhs, rhs, relation, st)


def condition_report(spec: PatchSpec) -> list[ConditionStatus]:
    """Evaluate every applicable condition without choosing a mode.

    A condition met with slack is ``SATISFIED_STRICTLY``; an inequality met
    only with equality is ``SATISFIED_AS_EQUALITY`` (admissible in non-strict
    mode only). Parity and equality conditions are never reported as
    equalities. Hence all-strict iff strictly solvable, and no violation
    iff solvable in non-strict mode.

    Edge minimums appear as ``e_i > 1``; a side with a single edge is an
    equality. For ``n = 4`` and ``n = 8`` each parameter range (lo, hi)
    appears as ``hi > lo + 1`` so that an integer fits strictly inside.
    """
    problems = validate(spec, Mode.NONSTRICT)
    if any(p.kind == "SideCountBelowTwo" for p in problems):
        raise PatchValidationError(problems)
    if spec.n > MAX_CLOSED_FORM_N:
        raise UnsupportedSideCount(f"condition report covers n <= {MAX_CLOSED_FORM_N}")
    n = spec.n
    out = [_ineq("edge_minimum", i, e, 1) for i, e in enumerate(spec.edges)]
    total = sum(spec.edges)
    out.append(_eq("parity", None, total % 2, 0, "sum mod 2 =="))

    if n % 4 == 0:
        for subset in ("even", "odd"):
            out.append(_eq("equality", subset, *_equality_sides(spec, subset)))
        for p, (lowers, uppers) in enumerate(_family_bounds(spec)):
            lo = max(b for b, _ in lowers)
            hi = min(b for b, _ in uppers)
            # strict needs an integer in (lo, hi); non-strict one in [lo, hi]
            if hi - lo >= 2:
                st = Status.SATISFIED_STRICTLY
            elif hi >= lo:
                st = Status.SATISFIED_AS_EQUALITY
            else:
                st = Status.VIOLATED
            out.append(ConditionStatus("interval", p, hi, lo, "upper - lower >= 2", st))
        return out

    if n % 2 == 0:
        for subset, t in _subset_sums(spec).items():
            out.append(_eq("subset_parity", subset, t % 2, 0, "sum mod 2 =="))
    for i in range(n):
        out.append(_ineq("inequality", i, *_unique_terms(spec, i)))
    return out
