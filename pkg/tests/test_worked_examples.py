"""Worked examples for each module that are not covered elsewhere."""

import itertools

import numpy as np
import pytest

from ccquad import Mode, OutcomeKind, PatchSpec, satisfies_rows, solve, solve_general
from ccquad.io_formats import write_mesh_obj
from ccquad.oracle import brute_force_solutions
from ccquad.quadrangulator import (
    BoundaryGeometry,
    build_topology,
    embed_geometry,
    is_simple_loop,
    mesh_stats,
    synthesize_boundary,
)
from ccquad.scan import (
    ScanRange,
    probe_equality_count,
    scan_range,
    verify_octa_feasibility,
    verify_oracle_equivalence,
    verify_uniqueness,
)


def test_heptagon_symmetric():
    out = solve_general(PatchSpec([2] * 7))
    assert out.solution == (1,) * 7
    assert solve(PatchSpec([2] * 7)).solution == (1,) * 7


def test_nonagon_matches_oracle():
    spec = PatchSpec((2, 3, 2, 3, 2, 3, 2, 3, 4))
    for mode in Mode:
        assert solve_general(spec, mode).solution_set() == brute_force_solutions(spec, mode)


def test_twelve_gon_intervals():
    k0, k1 = solve_general(PatchSpec([3] * 12)).params
    assert str(k0) == "(0, 3)" and str(k1) == "(0, 3)"


def test_zero_spoke_octagon_datum():
    spec = PatchSpec([2] * 8)
    out = solve(spec, Mode.NONSTRICT)
    s = out.member(0, 0)
    assert s == (0, 0, 2, 2, 0, 0, 2, 2)
    assert satisfies_rows(spec.edges, s)
    assert solve(spec, Mode.STRICT).member(1, 1) == (1,) * 8


def test_synthesized_boundaries():
    sq = synthesize_boundary(PatchSpec((1, 1, 1, 1)))
    assert len(sq.loop()) == 4
    # corners sit on the axes: the unit square turned by 45 degrees
    assert np.allclose(np.sort(np.abs(sq.corners), axis=None), [0, 0, 0, 0, 1, 1, 1, 1], atol=1e-12)
    lens = np.linalg.norm(np.roll(sq.corners, -1, axis=0) - sq.corners, axis=1)
    assert np.allclose(lens, lens[0])

    lens_pts = synthesize_boundary(PatchSpec((4, 6))).loop()
    assert len(lens_pts) == 10
    r = np.linalg.norm(lens_pts, axis=1)
    assert np.allclose(r, r[0])

    pent = synthesize_boundary(PatchSpec((6, 4, 3, 5, 4)))
    assert len(pent.loop()) == 22 and is_simple_loop(pent.loop())


def test_coons_on_rectangle():
    spec = PatchSpec((3, 5, 3, 5))
    w, h = 3.0, 5.0
    c = [(0, 0), (w, 0), (w, h), (0, h)]
    sides = []
    for i in range(4):
        a, b = np.array(c[i]), np.array(c[(i + 1) % 4])
        sides.append([a + (b - a) * t / spec.edges[i] for t in range(spec.edges[i] + 1)])
    mesh = embed_geometry(build_topology(spec, (1, 1, 4, 2)), BoundaryGeometry(sides))
    got = {tuple(np.round(p, 12)) for p in mesh.vertices}
    assert got == {(float(x), float(y)) for x in range(4) for y in range(6)}
    st = mesh_stats(mesh)
    assert st.F == 15 and not st.interior_irregular


def test_scan_triangles():
    rep = scan_range(ScanRange(3, 2, 4), ["oracle"])
    assert rep.total == 27 and rep.ok
    expected = sum(
        1
        for e in itertools.product(range(2, 5), repeat=3)
        if sum(e) % 2 == 0 and all(e[(i + 1) % 3] + e[(i + 2) % 3] > e[i] for i in range(3))
    )
    assert rep.cc_able == expected


def test_scan_digons():
    rep = scan_range(ScanRange(2, 2, 5))
    assert rep.cc_able == 4
    feasible = {e for e in itertools.product(range(2, 6), repeat=2) if solve(PatchSpec(e)).feasible}
    assert feasible == {(2, 2), (2, 4), (4, 2), (4, 4)}


def test_scan_octagon_multiplicity():
    rep = scan_range(ScanRange(8, 2, 4))
    assert min(rep.multiplicity) >= 1
    assert max(rep.multiplicity) >= 2


@pytest.mark.parametrize("n, lo, hi", [(5, 2, 5), (6, 2, 4), (8, 2, 3)])
def test_oracle_boxes(n, lo, hi):
    assert verify_oracle_equivalence(ScanRange(n, lo, hi)) == []


@pytest.mark.parametrize("n, lo, hi", [(5, 2, 5), (7, 2, 3), (3, 2, 6)])
def test_uniqueness_boxes(n, lo, hi):
    assert verify_uniqueness(ScanRange(n, lo, hi)) == []


def test_feasibility_examples():
    assert verify_octa_feasibility(ScanRange(8, 2, 5)) == []
    assert solve(PatchSpec((4, 3, 4, 3, 4, 3, 4, 3))).count() == 6
    assert solve(PatchSpec([2] * 8)).kind is OutcomeKind.FAMILY


def test_probe_examples():
    assert probe_equality_count(ScanRange(3, 1, 5, Mode.NONSTRICT)).max_zero_count <= 2
    probe = probe_equality_count(ScanRange(5, 2, 4, Mode.NONSTRICT))
    assert probe.distribution.get(2, 0) >= 1
    assert ((2, 2, 2, 4, 2), (0, 0, 2, 2, 2)) in probe.extremal or probe.max_zero_count > 2


def test_single_quad_obj():
    spec = PatchSpec((1, 1, 1, 1))
    mesh = embed_geometry(build_topology(spec, (0, 0, 1, 1)), synthesize_boundary(spec))
    lines = write_mesh_obj(mesh).decode().splitlines()
    assert sum(l.startswith("v ") for l in lines) == 4
    assert sum(l.startswith("f ") for l in lines) == 1
