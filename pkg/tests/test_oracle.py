import itertools

import pytest

from ccquad import Mode, PatchSpec
from ccquad.oracle import BudgetExceeded, OracleBudget, brute_force_solutions


def test_pentagon():
    assert brute_force_solutions(PatchSpec((6, 4, 3, 5, 4))) == {(3, 2, 1, 1, 4)}


def test_octagon_count():
    assert len(brute_force_solutions(PatchSpec((4, 3, 4, 3, 4, 3, 4, 3)))) == 6


def test_nonstrict_zero_spokes():
    assert brute_force_solutions(PatchSpec((2, 2, 2, 4, 2)), Mode.NONSTRICT) == {(0, 0, 2, 2, 2)}
    assert brute_force_solutions(PatchSpec((2, 2, 2, 4, 2)), Mode.STRICT) == frozenset()


@pytest.mark.parametrize("n, top", [(3, 5), (4, 4), (5, 4), (6, 3)])
def test_search_bound_is_sufficient(n, top):
    # s_i <= e_{i+1}, so widening the range by one finds nothing new
    for edges in itertools.product(range(1, top + 1), repeat=n):
        spec = PatchSpec(edges)
        for mode in Mode:
            base = brute_force_solutions(spec, mode)
            assert brute_force_solutions(spec, mode, upper=max(edges) + 1) == base


def test_budget():
    with pytest.raises(BudgetExceeded):
        brute_force_solutions(PatchSpec([9] * 8), Mode.NONSTRICT, OracleBudget(100))


def test_rejects_single_side():
    with pytest.raises(ValueError):
        brute_force_solutions(PatchSpec((3,)))
