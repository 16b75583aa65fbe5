import json
import xml.etree.ElementTree as ET
from importlib import resources

import jsonschema
import numpy as np
import pytest

from ccquad import Mode, PatchSpec, solve, solve_general
from ccquad.io_formats import (
    OutcomeDocument,
    PatchInput,
    PatchInputError,
    dump_patch_input,
    parse_outcome_json,
    parse_patch_input,
    read_obj,
    write_mesh_obj,
    write_report,
    write_svg_preview,
)
from ccquad.quadrangulator import build_topology, embed_geometry, synthesize_boundary

SCHEMA = json.loads(resources.files("ccquad").joinpath("schemas/outcome.schema.json").read_text())


def _pentagon_mesh():
    spec = PatchSpec((6, 4, 3, 5, 4))
    return embed_geometry(build_topology(spec, (3, 2, 1, 1, 4)), synthesize_boundary(spec))


def test_obj_counts_and_round_trip():
    mesh = _pentagon_mesh()
    data = write_mesh_obj(mesh)
    lines = data.decode().splitlines()
    assert lines[0].startswith("# ccquad patch n=5")
    assert sum(l.startswith("v ") for l in lines) == 37
    assert sum(l.startswith("f ") for l in lines) == 25
    V, F = read_obj(data)
    assert V.shape == (37, 3)
    assert np.allclose(V[:, :2], mesh.vertices, atol=1e-8)
    assert F == mesh.quads.tolist()
    assert write_mesh_obj(_pentagon_mesh()) == data


def test_obj_to_file(tmp_path):
    path = tmp_path / "p.obj"
    data = write_mesh_obj(_pentagon_mesh(), path)
    assert path.read_bytes() == data


def test_obj_needs_positions():
    with pytest.raises(ValueError):
        write_mesh_obj(build_topology(PatchSpec((2, 2, 2)), (1, 1, 1)))


def test_svg_preview():
    mesh = _pentagon_mesh()
    root = ET.fromstring(write_svg_preview(mesh))
    ns = "{http://www.w3.org/2000/svg}"
    assert len(root.findall(f".//{ns}polyline[@class='quad']")) == 25
    assert len(root.findall(f".//{ns}polyline[@class='side']")) == 5
    assert len(root.findall(f".//{ns}circle[@class='singular']")) == 1


@pytest.mark.parametrize(
    "edges, mode",
    [
        ((6, 4, 3, 5, 4), Mode.STRICT),
        ((4, 3, 4, 3, 4, 3, 4, 3), Mode.STRICT),
        ((3, 3, 2, 2, 2, 2), Mode.STRICT),
        ((6, 2, 2), Mode.STRICT),
        ((2, 2, 2, 4, 2), Mode.NONSTRICT),
        ((3, 5, 3, 5), Mode.NONSTRICT),
    ],
)
def test_report_json_schema_and_round_trip(edges, mode):
    out = solve(PatchSpec(edges), mode)
    data = write_report(out, "json")
    d = json.loads(data)
    jsonschema.validate(d, SCHEMA)
    doc = parse_outcome_json(data)
    assert doc.to_json() == data
    assert [tuple(s) for s in d["solutions"]] == sorted(out.solution_set())
    assert d["solution_count"] == out.count()


def test_report_beyond_closed_forms_has_no_conditions():
    d = json.loads(write_report(solve_general(PatchSpec([3] * 12)), "json"))
    jsonschema.validate(d, SCHEMA)
    assert d["conditions"] is None and d["solution_count"] == 4


def test_report_text():
    text = write_report(solve(PatchSpec((4, 3, 4, 3, 4, 3, 4, 3))), "text").decode()
    assert "6 solutions" in text and "k0 in [1, 2], k1 in [1, 3]" in text
    text = write_report(solve(PatchSpec((6, 2, 2))), "text").decode()
    assert "not CC-able" in text and "InequalityViolation" in text
    with pytest.raises(ValueError):
        write_report(solve(PatchSpec((2, 2))), "yaml")


def test_report_limit():
    d = json.loads(write_report(solve(PatchSpec((4, 3, 4, 3, 4, 3, 4, 3))), "json", limit=2))
    assert len(d["solutions"]) == 2 and d["solution_count"] == 6


def test_unknown_schema_version():
    d = OutcomeDocument.from_outcome(solve(PatchSpec((2, 2)))).to_dict()
    d["schema"] = 99
    with pytest.raises(ValueError):
        OutcomeDocument.from_dict(d)


def test_patch_input_round_trip():
    spec = PatchSpec((2, 2, 2))
    patch = PatchInput(spec, Mode.NONSTRICT, synthesize_boundary(spec), None, 3)
    back = parse_patch_input(dump_patch_input(patch))
    assert back.spec == spec and back.mode is Mode.NONSTRICT and back.smooth == 3
    for a, b in zip(back.boundary.sides, patch.boundary.sides):
        assert np.allclose(a, b)


@pytest.mark.parametrize(
    "doc, field, line",
    [
        ('{"edges": [2, 2, 2],\n "mode": "loose"}', "mode", 2),
        ('{"edges": [2, "x", 2]}', "edges", 1),
        ('{"n": 4,\n "edges": [2, 2, 2]}', "n", 1),
        ('{"edges": [2, 2],\n "colour": 1}', "colour", 2),
        ('{"edges": [2, 2],\n "pick": [1]}', "pick", 2),
        ('{"edges": [2, 2],\n\n "smooth": -1}', "smooth", 3),
        ('{"edges": [1, 1],\n "boundary": [[[0, 0], [1, 0]], [[1, 0]]]}', "boundary[1]", 2),
        ('{"mode": "strict"}', "edges", None),
    ],
)
def test_patch_input_errors(doc, field, line):
    with pytest.raises(PatchInputError) as exc:
        parse_patch_input(doc)
    assert exc.value.field == field
    assert exc.value.line == line


def test_patch_input_syntax_error_line():
    with pytest.raises(PatchInputError) as exc:
        parse_patch_input('{"edges": [2, 2],\n  oops}')
    assert exc.value.line == 2


def test_patch_input_open_boundary():
    doc = {"edges": [1, 1], "boundary": [[[0, 0], [1, 0]], [[1, 0], [0.5, 1]]]}
    with pytest.raises(PatchInputError) as exc:
        parse_patch_input(json.dumps(doc))
    assert exc.value.field == "boundary"
