import pytest

from ccquad import Mode
from ccquad.io_formats import write_scan_report
from ccquad.scan import (
    ScanCapExceeded,
    ScanRange,
    probe_equality_count,
    scan_range,
    verify_octa_feasibility,
    verify_oracle_equivalence,
    verify_uniqueness,
)


def test_small_box_counts():
    rep = scan_range(ScanRange(3, 1, 4))
    assert rep.total == 64
    assert rep.parity_passing == 32
    # strict needs e >= 2: only [2..4]^3 instances can be CC-able
    assert rep.multiplicity.keys() <= {1}


def test_oracle_equivalence_small():
    for mode in Mode:
        assert verify_oracle_equivalence(ScanRange(5, 1, 3, mode)) == []


def test_uniqueness_small():
    assert verify_uniqueness(ScanRange(6, 1, 3, Mode.NONSTRICT)) == []
    with pytest.raises(ValueError):
        verify_uniqueness(ScanRange(4, 1, 3))


def test_octa_feasibility_small():
    assert verify_octa_feasibility(ScanRange(8, 2, 3)) == []
    with pytest.raises(ValueError):
        verify_octa_feasibility(ScanRange(8, 1, 3))


def test_equality_probe():
    probe = probe_equality_count(ScanRange(8, 1, 2, Mode.NONSTRICT))
    assert probe.max_zero_count == 4
    assert ((1,) * 8, (0, 0, 1, 1, 0, 0, 1, 1)) in probe.extremal
    with pytest.raises(ValueError):
        probe_equality_count(ScanRange(8, 1, 2))


def test_cap():
    with pytest.raises(ScanCapExceeded):
        scan_range(ScanRange(8, 1, 9, cap=1000))


def test_unknown_check():
    with pytest.raises(ValueError):
        scan_range(ScanRange(3, 1, 2), ["speed"])


def test_workers_do_not_change_report():
    rng = ScanRange(6, 1, 4, Mode.NONSTRICT)
    checks = ["oracle", "uniqueness", "equalities", "conditions"]
    one = write_scan_report(scan_range(rng, checks, workers=1, chunk_size=300))
    many = write_scan_report(scan_range(rng, checks, workers=3, chunk_size=300))
    assert one == many
    assert scan_range(rng, checks).ok
