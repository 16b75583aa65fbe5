"""Exhaustive scans over boxes of edge vectors.

A scan visits every ``e`` in ``[e_min, e_max]^n``, solves it, and can run
extra checks per instance:

``oracle``
    closed-form and propagation solution sets equal the brute-force set.
``uniqueness``
    no instance has two or more solutions (brute force; n not a multiple of 4).
``feasibility``
    for n = 8, every instance whose opposite-pair sums balance has a strict
    solution, certified by checking the rows directly.
``equalities``
    record how many spokes vanish per solution (reported, never asserted).
``conditions``
    the per-condition report agrees with the solver in both modes.

Per-instance results merge by commutative aggregation, so the report does
not depend on the number of workers.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import Mode, PatchSpec, PatchValidationError, satisfies_rows, validate
from .general_solver import solve_general
from .oracle import BudgetExceeded, OracleBudget, brute_force_solutions
from .solver import MAX_CLOSED_FORM_N, Status, condition_report, solve

CHECKS = ("oracle", "uniqueness", "feasibility", "equalities", "conditions")
DEFAULT_CAP = 2_000_000
EXTREMAL_KEEP = 10


class ScanCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class ScanRange:
    n: int
    e_min: int
    e_max: int
    mode: Mode = Mode.STRICT
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.e_min < 1 or self.e_max < self.e_min:
            raise ValueError(f"bad edge range [{self.e_min}, {self.e_max}]")

    @property
    def size(self) -> int:
        return (self.e_max - self.e_min + 1) ** self.n

    def instances(self):
        return itertools.product(range(self.e_min, self.e_max + 1), repeat=self.n)


@dataclass
class ScanReport:
    n: int
    e_min: int
    e_max: int
    mode: str
    checks: tuple[str, ...]
    total: int = 0
    parity_passing: int = 0
    cc_able: int = 0
    total_solutions: int = 0
    multiplicity: Counter = field(default_factory=Counter)
    zero_counts: Counter = field(default_factory=Counter)
    max_zero_count: int = -1
    extremal: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def merge(self, other: "ScanReport") -> "ScanReport":
        self.total += other.total
        self.parity_passing += other.parity_passing
        self.cc_able += other.cc_able
        self.total_solutions += other.total_solutions
        self.multiplicity.update(other.multiplicity)
        self.zero_counts.update(other.zero_counts)
        if other.max_zero_count > self.max_zero_count:
            self.max_zero_count = other.max_zero_count
            self.extremal = list(other.extremal)
        elif other.max_zero_count == self.max_zero_count:
            self.extremal = sorted(self.extremal + other.extremal)[:EXTREMAL_KEEP]
        self.counterexamples = sorted(self.counterexamples + other.counterexamples, key=_ce_key)
        self.skipped = sorted(self.skipped + other.skipped)
        return self

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "e_min": self.e_min,
            "e_max": self.e_max,
            "mode": self.mode,
            "checks": list(self.checks),
            "total": self.total,
            "parity_passing": self.parity_passing,
            "cc_able": self.cc_able,
            "total_solutions": self.total_solutions,
            "multiplicity": {str(k): v for k, v in sorted(self.multiplicity.items())},
            "zero_counts": {str(k): v for k, v in sorted(self.zero_counts.items())},
            "max_zero_count": self.max_zero_count if self.total_solutions else None,
            "extremal": [{"edges": list(e), "s": list(s)} for e, s in self.extremal],
            "counterexamples": self.counterexamples,
            "skipped": [list(e) for e in self.skipped],
            "ok": self.ok,
        }


def _ce_key(ce: dict):
    return (ce["check"], ce["edges"])


def _solve(spec: PatchSpec, mode: Mode):
    if spec.n <= MAX_CLOSED_FORM_N:
        return solve(spec, mode)
    return solve_general(spec, mode)


def _solution_set(fn, spec, mode) -> frozenset:
    try:
        return fn(spec, mode).solution_set()
    except PatchValidationError:
        # below the mode's edge minimum: no admissible solution
        return frozenset()


def _octa_balanced(e) -> bool:
    return e[0] + e[4] == e[2] + e[6] and e[1] + e[5] == e[3] + e[7]


def _scan_chunk(args) -> ScanReport:
    n, e_min, e_max, mode_value, checks, chunk = args
    mode = Mode(mode_value)
    rep = ScanReport(n, e_min, e_max, mode_value, tuple(checks))
    budget = OracleBudget()
    for edges in chunk:
        spec = PatchSpec(edges)
        rep.total += 1
        if sum(edges) % 2 == 0:
            rep.parity_passing += 1
        valid = not validate(spec, mode)
        outcome = _solve(spec, mode) if valid else None
        sols = sorted(outcome.solution_set()) if outcome is not None else []
        if sols:
            rep.cc_able += 1
            rep.multiplicity[len(sols)] += 1
            rep.total_solutions += len(sols)
        for s in sols:
            z = sum(1 for v in s if v == 0)
            rep.zero_counts[z] += 1
            if z > rep.max_zero_count:
                rep.max_zero_count = z
                rep.extremal = []
            if z == rep.max_zero_count and len(rep.extremal) < EXTREMAL_KEEP:
                rep.extremal.append((tuple(edges), tuple(s)))

        needs_oracle = "oracle" in checks or "uniqueness" in checks
        oracle = None
        if needs_oracle:
            try:
                oracle = brute_force_solutions(spec, mode, budget)
            except BudgetExceeded:
                rep.skipped.append(tuple(edges))

        if "oracle" in checks and oracle is not None:
            closed = _solution_set(solve, spec, mode) if n <= MAX_CLOSED_FORM_N else None
            general = _solution_set(solve_general, spec, mode)
            if general != oracle or (closed is not None and closed != oracle):
                rep.counterexamples.append(
                    {
                        "check": "oracle",
                        "edges": list(edges),
                        "closed_form": None if closed is None else sorted(map(list, closed)),
                        "general": sorted(map(list, general)),
                        "oracle": sorted(map(list, oracle)),
                    }
                )

        if "uniqueness" in checks and oracle is not None and len(oracle) >= 2:
            rep.counterexamples.append(
                {"check": "uniqueness", "edges": list(edges), "solutions": sorted(map(list, oracle))}
            )

        if "feasibility" in checks and n == 8 and min(edges) >= 2 and _octa_balanced(edges):
            cert = next(solve_general(spec, Mode.STRICT).iter_solutions(), None)
            if cert is None or not satisfies_rows(edges, cert) or min(cert) < 1:
                rep.counterexamples.append({"check": "feasibility", "edges": list(edges)})

        if "conditions" in checks and n <= MAX_CLOSED_FORM_N and min(edges) >= 1:
            statuses = [c.status for c in condition_report(spec)]
            all_strict = all(st is Status.SATISFIED_STRICTLY for st in statuses)
            none_violated = all(st is not Status.VIOLATED for st in statuses)
            strict_ok = bool(_solution_set(solve, spec, Mode.STRICT))
            loose_ok = bool(_solution_set(solve, spec, Mode.NONSTRICT))
            if all_strict != strict_ok or none_violated != loose_ok:
                rep.counterexamples.append({"check": "conditions", "edges": list(edges)})
    return rep


def scan_range(range_: ScanRange, checks=(), workers: int = 1, chunk_size: int = 2048) -> ScanReport:
    """Scan every instance of ``range_``; ``workers > 1`` uses processes."""
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}; choose from {CHECKS}")
    if range_.size > range_.cap:
        raise ScanCapExceeded(
            f"{range_.size} instances exceed the cap of {range_.cap}; narrow the range or raise the cap"
        )
    checks = tuple(c for c in CHECKS if c in checks)
    mode = Mode.parse(range_.mode)
    it = range_.instances()
    chunks = []
    while True:
        block = list(itertools.islice(it, chunk_size))
        if not block:
            break
        chunks.append((range_.n, range_.e_min, range_.e_max, mode.value, checks, block))
    report = ScanReport(range_.n, range_.e_min, range_.e_max, mode.value, checks)
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan_chunk, chunks))
    else:
        parts = [_scan_chunk(c) for c in chunks]
    for part in parts:
        report.merge(part)
    return report


def verify_oracle_equivalence(range_: ScanRange, workers: int = 1) -> list[dict]:
    """Instances where a solver disagrees with brute force (expected empty)."""
    return scan_range(range_, ["oracle"], workers).counterexamples


def verify_uniqueness(range_: ScanRange, workers: int = 1) -> list[dict]:
    """Instances with two or more solutions (expected empty for n not divisible by 4)."""
    if range_.n % 4 == 0:
        raise ValueError("uniqueness is only claimed when n is not a multiple of 4")
    return scan_range(range_, ["uniqueness"], workers).counterexamples


def verify_octa_feasibility(range_: ScanRange, workers: int = 1) -> list[dict]:
    """Balanced octagons without a strict solution (expected empty)."""
    if range_.n != 8:
        raise ValueError("feasibility check applies to n = 8")
    if Mode.parse(range_.mode) is not Mode.STRICT or range_.e_min < 2:
        raise ValueError("feasibility check needs strict mode and e_min >= 2")
    return scan_range(range_, ["feasibility"], workers).counterexamples


@dataclass(frozen=True)
class EqualityProbe:
    distribution: dict[int, int]
    max_zero_count: int | None
    extremal: list[tuple[tuple[int, ...], tuple[int, ...]]]


def probe_equality_count(range_: ScanRange, workers: int = 1) -> EqualityProbe:
    """How many spokes vanish across all non-strict solutions of the range."""
    if Mode.parse(range_.mode) is not Mode.NONSTRICT:
        raise ValueError("the equality probe runs in non-strict mode")
    rep = scan_range(range_, ["equalities"], workers)
    return EqualityProbe(
        distribution=dict(sorted(rep.zero_counts.items())),
        max_zero_count=rep.max_zero_count if rep.total_solutions else None,
        extremal=list(rep.extremal),
    )
