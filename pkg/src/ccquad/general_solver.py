"""Single-singularity quadrangulation for any number of sides.

The rows ``e[i] = s[i-1] + s[i+1]`` link every spoke to the one two steps
ahead, so the unknowns fall into step-2 cycles: one cycle of length ``n``
for odd ``n``, two cycles of length ``n/2`` for even ``n``. Seeding a cycle
with a free parameter ``k`` and walking it writes every spoke as
``a + k`` or ``a - k``. Returning to the seed closes the cycle:

* odd length: ``k = a - k``, so ``2k = a`` fixes the value;
* even length: ``k = a + k``, so ``a`` must vanish (a consistency equation)
  and ``k`` stays free within the bounds the mode imposes on every spoke.
"""

from __future__ import annotations

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
    validate,
)


@dataclass(frozen=True)
class UniqueValue:
    """Odd cycle closure: ``2 * k == twice``."""

    param: int
    twice: int

    @property
    def exact(self) -> bool:
        return self.twice % 2 == 0


@dataclass(frozen=True)
class ConsistencyEquation:
    """Even cycle closure: ``residual`` must be zero."""

    param: int
    residual: int


ClosureConstraint = UniqueValue | ConsistencyEquation


@dataclass(frozen=True)
class Propagation:
    """Spokes as affine functions of the seeds plus the cycle closures."""

    exprs: tuple[AffineExpr, ...]
    closures: tuple[ClosureConstraint, ...]
    # signed edge coefficients of each constant, for diagnostics
    supports: tuple[tuple[int, ...], ...]


def propagate(spec: PatchSpec) -> Propagation:
    """Walk both step-2 cycles; ``s[0] = k0`` and, for even n, ``s[1] = k1``."""
    n = spec.n
    exprs: list[AffineExpr | None] = [None] * n
    supports: list[tuple[int, ...] | None] = [None] * n
    closures: list[ClosureConstraint] = []
    seeds = (0,) if n % 2 else (0, 1)
    for param, start in enumerate(seeds):
        cur = AffineExpr(0, 1, param)
        sup = [0] * n
        i = start
        while True:
            exprs[i] = cur
            supports[i] = tuple(sup)
            nxt = (i + 2) % n
            # row i+1 links s[i] and s[i+2]
            row = (i + 1) % n
            cur = cur.negated_plus(spec.edges[row])
            sup = [-c for c in sup]
            sup[row] += 1
            i = nxt
            if i == start:
                break
        if cur.coeff == -1:
            # k = a - k
            closures.append(UniqueValue(param, cur.constant))
        else:
            closures.append(ConsistencyEquation(param, cur.constant))
    return Propagation(tuple(exprs), tuple(closures), tuple(supports))


def explicit_odd_formula(spec: PatchSpec, i: int) -> int:
    """Twice ``s[i]`` as an alternating sum over the cycle through ``i``.

    ``2 s_i = sum_j (-1)^j e[i + 1 + 2j]`` with ``j`` running over the cycle
    length (``n`` for odd ``n``, ``n/2`` when ``n = 2 (mod 4)``).
    """
    n = spec.n
    length = n if n % 2 else n // 2
    if length % 2 == 0:
        raise ValueError("no unique closed form when n is a multiple of 4")
    return sum((-1) ** j * spec.e(i + 1 + 2 * j) for j in range(length))


def _split(support: tuple[int, ...], edges: tuple[int, ...]) -> tuple[int, int]:
    pos = sum(c * e for c, e in zip(support, edges) if c > 0)
    neg = -sum(c * e for c, e in zip(support, edges) if c < 0)
    return pos, neg


def solve_general(spec: PatchSpec, mode: Mode = Mode.STRICT) -> SolveOutcome:
    """Solve for any ``n >= 2`` by propagation; agrees with :func:`ccquad.solver.solve`.

    Raises
    ------
    PatchValidationError
        Fewer than two sides, or a side below the mode's edge minimum.
    """
    mode = Mode.parse(mode)
    problems = validate(spec, mode)
    if problems:
        raise PatchValidationError(problems)
    n = spec.n
    lb = mode.lower
    prop = propagate(spec)
    reasons: list[FailureReason] = []
    if sum(spec.edges) % 2:
        reasons.append(ParityViolation(total=sum(spec.edges)))

    if isinstance(prop.closures[0], UniqueValue):
        values = [c.twice for c in prop.closures]
        for c in reversed(prop.closures):
            if not c.exact and n % 2 == 0:
                # the k0 cycle runs through odd rows, k1 through even rows
                subset = "odd" if c.param == 0 else "even"
                total = sum(spec.edges[(c.param + 1) % 2 :: 2])
                reasons.append(SubsetParityViolation(subset=subset, total=total))
        if not all(c.exact for c in prop.closures) and n % 2 == 1:
            assert reasons, "odd cycle closure is odd only when the total is odd"
        doubled = []
        for i, (a, sup) in enumerate(zip(prop.exprs, prop.supports)):
            # 2 s_i = 2a + coeff * 2k
            twice = 2 * a.constant + a.coeff * values[a.param]
            doubled.append(twice)
            if (twice <= 0) if mode is Mode.STRICT else (twice < 0):
                # fold the closure value into the edge support
                cyc = _closure_support(spec, a.param)
                full = tuple(2 * c + a.coeff * d for c, d in zip(sup, cyc))
                lhs, rhs = _split(full, spec.edges)
                reasons.append(InequalityViolation(index=i, lhs=lhs, rhs=rhs))
        if reasons:
            return SolveOutcome(OutcomeKind.INFEASIBLE, spec, mode, reasons=tuple(reasons))
        assert all(t % 2 == 0 for t in doubled)
        return SolveOutcome(
            OutcomeKind.UNIQUE, spec, mode, solution=tuple(t // 2 for t in doubled)
        )

    for c in reversed(prop.closures):
        if c.residual != 0:
            # the k0 cycle carries the odd sides, k1 the even ones
            r = 1 if c.param == 0 else 0
            lhs = sum(e for i, e in enumerate(spec.edges) if i % 4 == r)
            rhs = sum(e for i, e in enumerate(spec.edges) if i % 4 == r + 2)
            reasons.append(
                EqualitySystemViolation(subset="odd" if r else "even", lhs=lhs, rhs=rhs)
            )
    if reasons:
        return SolveOutcome(OutcomeKind.INFEASIBLE, spec, mode, reasons=tuple(reasons))

    params = []
    for p in (0, 1):
        # inclusive integer range from lb <= a +/- k
        lows = [(lb - a.constant, i) for i, a in enumerate(prop.exprs) if a.param == p and a.coeff == 1]
        highs = [(a.constant - lb, i) for i, a in enumerate(prop.exprs) if a.param == p and a.coeff == -1]
        lo, _ = max(lows)
        hi, spoke = min(highs)
        if mode is Mode.STRICT:
            fp = FreeParam(lo - 1, hi + 1, open_bounds=True)
        else:
            fp = FreeParam(lo, hi, open_bounds=False)
        params.append(fp)
        if hi < lo:
            upper = hi + lb
            reasons.append(InequalityViolation(index=spoke, lhs=upper, rhs=lo))
    if reasons:
        return SolveOutcome(OutcomeKind.INFEASIBLE, spec, mode, reasons=tuple(reasons))
    return SolveOutcome(
        OutcomeKind.FAMILY,
        spec,
        mode,
        params=(params[0], params[1]),
        rule=prop.exprs,
        tessellation_equivalent=(n == 4),
    )


def _closure_support(spec: PatchSpec, param: int) -> tuple[int, ...]:
    """Signed edge coefficients of ``2k`` for an odd cycle closure."""
    n = spec.n
    start = 0 if n % 2 else param
    length = n if n % 2 else n // 2
    sup = [0] * n
    for j in range(length):
        sup[(start + 1 + 2 * j) % n] += (-1) ** j
    return tuple(sup)


def enumerate_solutions(outcome: SolveOutcome, limit: int | None = None) -> list[tuple[int, ...]]:
    """Materialize solutions in lexicographic ``(k0, k1)`` order.

    Infeasible outcomes give an empty list; unique ones a singleton.
    """
    if limit is not None and limit < 1:
        raise ValueError("limit must be >= 1")
    out = []
    for s in outcome.iter_solutions():
        if limit is not None and len(out) >= limit:
            break
        out.append(s)
    return out


def feasibility_intervals(outcome: SolveOutcome) -> tuple[FreeParam, FreeParam]:
    """Admissible ranges of ``(k0, k1)`` for a family outcome."""
    if outcome.kind is not OutcomeKind.FAMILY:
        raise ValueError(f"expected a family outcome, got {outcome.kind.value}")
    return outcome.params
