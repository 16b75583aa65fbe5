"""Shared data model: patch instances, solve outcomes, failure reasons.

A patch has ``n`` sides; side ``i`` carries ``edges[i]`` unit edges. A
subdivision vector ``s`` assigns to every side ``i`` the length of the spoke
leaving its split point, and must satisfy::

    edges[i] == s[i - 1] + s[i + 1]      (indices mod n)

All arithmetic in this package is exact integer arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import ClassVar, Iterator, Sequence


class Mode(enum.Enum):
    """Strict: every spoke has positive length. NonStrict: zero allowed."""

    STRICT = "strict"
    NONSTRICT = "nonstrict"

    @property
    def lower(self) -> int:
        """Smallest admissible spoke length."""
        return 1 if self is Mode.STRICT else 0

    @property
    def min_edges(self) -> int:
        return 2 if self is Mode.STRICT else 1

    @classmethod
    def parse(cls, value: "str | Mode") -> "Mode":
        if isinstance(value, Mode):
            return value
        key = value.strip().lower().replace("-", "").replace("_", "")
        for m in cls:
            if m.value == key:
                return m
        raise ValueError(f"unknown mode {value!r} (expected 'strict' or 'nonstrict')")


@dataclass(frozen=True)
class PatchSpec:
    """An ``n``-sided patch with ``edges[i]`` edges on side ``i``.

    Construction does not validate; see :func:`validate` so that every
    problem can be reported at once.
    """

    edges: tuple[int, ...]

    def __init__(self, edges: Sequence[int]):
        object.__setattr__(self, "edges", tuple(int(e) for e in edges))

    @property
    def n(self) -> int:
        return len(self.edges)

    def e(self, i: int) -> int:
        """Edge count of side ``i`` with the index taken mod n."""
        return self.edges[i % self.n]

    def rotated(self, r: int) -> "PatchSpec":
        """Side ``i`` of the result is side ``i + r`` of ``self``."""
        n = self.n
        return PatchSpec([self.edges[(i + r) % n] for i in range(n)])

    def reflected(self) -> "PatchSpec":
        """Reverse the side ordering; side ``i`` becomes side ``-i``."""
        n = self.n
        return PatchSpec([self.edges[(-i) % n] for i in range(n)])

    def __str__(self) -> str:
        return ",".join(map(str, self.edges))


# ---------------------------------------------------------------------------
# failure reasons


@dataclass(frozen=True)
class FailureReason:
    kind: ClassVar[str] = ""

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        d.update({k: getattr(self, k) for k in self.__dataclass_fields__})
        return d

    @staticmethod
    def from_dict(d: dict) -> "FailureReason":
        d = dict(d)
        cls = _REASON_KINDS[d.pop("kind")]
        return cls(**d)

    def describe(self) -> str:
        return self.kind


@dataclass(frozen=True)
class ParityViolation(FailureReason):
    """Total edge count is odd."""

    kind: ClassVar[str] = "ParityViolation"
    total: int = 0

    def describe(self) -> str:
        return f"total edge count {self.total} is odd"


@dataclass(frozen=True)
class SubsetParityViolation(FailureReason):
    """Edges on the even-indexed (or odd-indexed) sides sum to an odd number."""

    kind: ClassVar[str] = "SubsetParityViolation"
    subset: str = "even"
    total: int = 0

    def describe(self) -> str:
        return f"{self.subset}-indexed sides sum to {self.total}, which is odd"


@dataclass(frozen=True)
class InequalityViolation(FailureReason):
    """Spoke ``index`` would be non-positive (strict) or negative.

    ``lhs - rhs`` has the sign of the offending spoke length: for uniquely
    determined vectors ``lhs - rhs == 2 * s[index]``; for parameter families
    ``lhs`` is the upper bound on the parameter and ``rhs`` its smallest
    admissible value.
    """

    kind: ClassVar[str] = "InequalityViolation"
    index: int = 0
    lhs: int = 0
    rhs: int = 0

    def describe(self) -> str:
        return f"spoke {self.index} is too short: {self.lhs} does not exceed {self.rhs}"


@dataclass(frozen=True)
class EqualitySystemViolation(FailureReason):
    """Sides ``i = r (mod 4)`` and ``i = r + 2 (mod 4)`` carry different totals.

    ``subset`` is ``"even"`` (r = 0) or ``"odd"`` (r = 1).
    """

    kind: ClassVar[str] = "EqualitySystemViolation"
    subset: str = "even"
    lhs: int = 0
    rhs: int = 0

    def describe(self) -> str:
        return f"{self.subset} sides: {self.lhs} != {self.rhs}"


@dataclass(frozen=True)
class EdgeCountBelowMinimum(FailureReason):
    kind: ClassVar[str] = "EdgeCountBelowMinimum"
    index: int = 0
    value: int = 0
    minimum: int = 0

    def describe(self) -> str:
        return f"side {self.index} has {self.value} edges, minimum is {self.minimum}"


@dataclass(frozen=True)
class SideCountBelowTwo(FailureReason):
    kind: ClassVar[str] = "SideCountBelowTwo"
    n: int = 0

    def describe(self) -> str:
        return f"a patch needs at least 2 sides, got {self.n}"


_REASON_KINDS: dict[str, type[FailureReason]] = {
    c.kind: c
    for c in (
        ParityViolation,
        SubsetParityViolation,
        InequalityViolation,
        EqualitySystemViolation,
        EdgeCountBelowMinimum,
        SideCountBelowTwo,
    )
}


class PatchValidationError(ValueError):
    """The instance is malformed for the requested mode (not merely infeasible)."""

    def __init__(self, reasons: Sequence[FailureReason]):
        self.reasons = tuple(reasons)
        super().__init__("; ".join(r.describe() for r in self.reasons))


class UnsupportedSideCount(ValueError):
    """Raised by the closed-form solver for n > 8; use the general solver."""


def validate(spec: PatchSpec, mode: Mode) -> list[FailureReason]:
    """Return the structural problems of ``spec`` under ``mode`` (empty if none)."""
    if spec.n < 2:
        return [SideCountBelowTwo(n=spec.n)]
    return [
        EdgeCountBelowMinimum(index=i, value=e, minimum=mode.min_edges)
        for i, e in enumerate(spec.edges)
        if e < mode.min_edges
    ]


def check_parity(spec: PatchSpec) -> bool:
    """True iff the total number of boundary edges is even."""
    return sum(spec.edges) % 2 == 0


def satisfies_rows(edges: Sequence[int], s: Sequence[int]) -> bool:
    """Check ``edges[i] == s[i-1] + s[i+1]`` for every side."""
    n = len(edges)
    return len(s) == n and all(edges[i] == s[i - 1] + s[(i + 1) % n] for i in range(n))


# ---------------------------------------------------------------------------
# outcomes


class OutcomeKind(enum.Enum):
    INFEASIBLE = "infeasible"
    UNIQUE = "unique"
    FAMILY = "family"


@dataclass(frozen=True)
class AffineExpr:
    """``constant + coeff * k[param]`` with ``coeff`` in {+1, -1}."""

    constant: int
    coeff: int
    param: int

    def __post_init__(self):
        if self.coeff not in (1, -1):
            raise ValueError("coefficient must be +1 or -1")
        if self.param not in (0, 1):
            raise ValueError("param must be 0 or 1")

    def __call__(self, k: Sequence[int]) -> int:
        return self.constant + self.coeff * k[self.param]

    def __str__(self) -> str:
        sign = "+" if self.coeff > 0 else "-"
        return f"{self.constant} {sign} k{self.param}" if self.constant else f"{sign.strip('+')}k{self.param}"

    def negated_plus(self, c: int) -> "AffineExpr":
        """``c - self``: one propagation step."""
        return AffineExpr(c - self.constant, -self.coeff, self.param)


@dataclass(frozen=True)
class FreeParam:
    """Admissible values of one family parameter.

    Bounds are open when ``open_bounds`` is set (strict mode) and closed
    otherwise; :meth:`inclusive` converts both to integer endpoints.
    """

    lower: int
    upper: int
    open_bounds: bool

    def inclusive(self) -> tuple[int, int]:
        if self.open_bounds:
            return self.lower + 1, self.upper - 1
        return self.lower, self.upper

    def values(self) -> range:
        lo, hi = self.inclusive()
        return range(lo, hi + 1)

    def __contains__(self, k: int) -> bool:
        lo, hi = self.inclusive()
        return lo <= k <= hi

    def __len__(self) -> int:
        lo, hi = self.inclusive()
        return max(0, hi - lo + 1)

    def __str__(self) -> str:
        if self.open_bounds:
            return f"({self.lower}, {self.upper})"
        return f"[{self.lower}, {self.upper}]"


@dataclass(frozen=True)
class SolveOutcome:
    """Result of deciding one patch.

    ``INFEASIBLE`` carries every violated condition in ``reasons``; ``UNIQUE``
    carries the one ``solution``; ``FAMILY`` carries two parameter ranges and
    an affine ``rule`` mapping ``(k0, k1)`` to a subdivision vector.
    """

    kind: OutcomeKind
    spec: PatchSpec
    mode: Mode
    reasons: tuple[FailureReason, ...] = ()
    solution: tuple[int, ...] | None = None
    params: tuple[FreeParam, FreeParam] | None = None
    rule: tuple[AffineExpr, ...] | None = None
    tessellation_equivalent: bool = field(default=False)

    @property
    def feasible(self) -> bool:
        return self.kind is not OutcomeKind.INFEASIBLE

    def member(self, k0: int, k1: int) -> tuple[int, ...]:
        """Materialize the family member for parameters ``(k0, k1)``."""
        if self.kind is not OutcomeKind.FAMILY:
            raise ValueError("member() applies to family outcomes only")
        if k0 not in self.params[0] or k1 not in self.params[1]:
            raise ValueError(
                f"pick ({k0}, {k1}) outside k0 in {self.params[0]}, k1 in {self.params[1]}"
            )
        return tuple(a((k0, k1)) for a in self.rule)

    def count(self) -> int:
        if self.kind is OutcomeKind.UNIQUE:
            return 1
        if self.kind is OutcomeKind.FAMILY:
            return len(self.params[0]) * len(self.params[1])
        return 0

    def iter_solutions(self) -> Iterator[tuple[int, ...]]:
        """Yield solutions; families in lexicographic ``(k0, k1)`` order."""
        if self.kind is OutcomeKind.UNIQUE:
            yield self.solution
        elif self.kind is OutcomeKind.FAMILY:
            for k0 in self.params[0].values():
                for k1 in self.params[1].values():
                    yield tuple(a((k0, k1)) for a in self.rule)

    def iter_picks(self) -> Iterator[tuple[int, int] | None]:
        """Parameters matching :meth:`iter_solutions` (``None`` for unique)."""
        if self.kind is OutcomeKind.UNIQUE:
            yield None
        elif self.kind is OutcomeKind.FAMILY:
            for k0 in self.params[0].values():
                for k1 in self.params[1].values():
                    yield (k0, k1)

    def solution_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.iter_solutions())


# ---------------------------------------------------------------------------
# singularity placement


@dataclass(frozen=True)
class SingularityClass:
    """Where the irregular vertex lands, read off the zero spokes.

    ``kind`` is one of ``interior``, ``boundary``, ``corner``, ``degenerate``.
    """

    kind: str
    zeros: tuple[int, ...]
    n: int

    @property
    def spoke(self) -> int | None:
        """The collapsed spoke for the boundary case."""
        return self.zeros[0] if self.kind == "boundary" else None

    @property
    def corner(self) -> int | None:
        """Corner vertex index (corner ``c`` joins sides ``c - 1`` and ``c``)."""
        if self.kind != "corner":
            return None
        a, b = self.zeros
        first = b if (b + 1) % self.n == a else a
        return (first + 1) % self.n

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "zeros": list(self.zeros)}
        if self.kind == "boundary":
            d["spoke"] = self.spoke
        if self.kind == "corner":
            d["corner"] = self.corner
        return d

    def __str__(self) -> str:
        if self.kind == "boundary":
            return f"boundary (spoke {self.spoke})"
        if self.kind == "corner":
            return f"corner {self.corner}"
        if self.kind == "degenerate":
            return f"degenerate (zeros at {list(self.zeros)})"
        return "interior"


def classify(s: Sequence[int]) -> SingularityClass:
    """Classify by the zero pattern of ``s``."""
    n = len(s)
    zeros = tuple(i for i, v in enumerate(s) if v == 0)
    if not zeros:
        kind = "interior"
    elif len(zeros) == 1:
        kind = "boundary"
    elif len(zeros) == 2 and (zeros[1] - zeros[0]) % n in (1, n - 1) and n > 2:
        kind = "corner"
    else:
        kind = "degenerate"
    return SingularityClass(kind, zeros, n)
