"""Exhaustive search for subdivision vectors, used as ground truth.

Only the defining rows ``e[i] == s[i-1] + s[i+1]`` are checked; no solver
algebra is imported here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Mode, PatchSpec


class BudgetExceeded(RuntimeError):
    """The search visited more candidates than allowed."""


@dataclass(frozen=True)
class OracleBudget:
    max_candidates: int = 5_000_000


def _rows_closed_at(n: int) -> list[list[int]]:
    """``out[i]``: rows whose two unknowns are both fixed once ``s[i]`` is."""
    out: list[list[int]] = [[] for _ in range(n)]
    for row in range(n):
        a, b = (row - 1) % n, (row + 1) % n
        out[max(a, b)].append(row)
    return out


def brute_force_solutions(
    spec: PatchSpec,
    mode: Mode = Mode.STRICT,
    budget: OracleBudget | None = None,
    upper: int | None = None,
) -> frozenset[tuple[int, ...]]:
    """All integer ``s`` with mode-appropriate lower bound satisfying every row.

    Components range over ``[lower, upper]`` with ``upper`` defaulting to
    ``max(edges)``, which is sound because ``s[i] <= e[i+1]``. Spokes are
    fixed in index order and each row is checked as soon as both of its
    spokes are known.

    Raises
    ------
    BudgetExceeded
        When more than ``budget.max_candidates`` partial assignments are tried.
    """
    mode = Mode.parse(mode)
    budget = budget or OracleBudget()
    e = spec.edges
    n = len(e)
    if n < 2:
        raise ValueError("need at least two sides")
    lo = mode.lower
    hi = max(e) if upper is None else upper
    closes = _rows_closed_at(n)
    s = [0] * n
    found: set[tuple[int, ...]] = set()
    visited = 0

    def dfs(i: int) -> None:
        nonlocal visited
        for v in range(lo, hi + 1):
            visited += 1
            if visited > budget.max_candidates:
                raise BudgetExceeded(
                    f"oracle budget of {budget.max_candidates} candidates exhausted on {spec}"
                )
            s[i] = v
            if all(e[r] == s[r - 1] + s[(r + 1) % n] for r in closes[i]):
                if i == n - 1:
                    found.add(tuple(s))
                else:
                    dfs(i + 1)

    dfs(0)
    return frozenset(found)
