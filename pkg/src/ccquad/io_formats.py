"""Readers and writers: patch input documents, reports, OBJ, SVG.

All writers return the bytes they produce and optionally write them to
``destination`` (a path or a binary file object). Output is deterministic:
identical inputs give byte-identical results.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Any

import numpy as np

from .core import (
    FailureReason,
    Mode,
    OutcomeKind,
    PatchSpec,
    SolveOutcome,
    classify,
)
from .quadrangulator import BoundaryGeometry, QuadMesh

SCHEMA_VERSION = 1


def _emit(data: bytes, destination) -> bytes:
    if destination is None:
        return data
    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "wb") as f:
            f.write(data)
    else:
        destination.write(data)
    return data


def _dumps(obj: Any) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode()


# ---------------------------------------------------------------------------
# patch input documents


class PatchInputError(ValueError):
    """Malformed patch document; ``field`` and ``line`` locate the problem."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass(frozen=True)
class PatchInput:
    spec: PatchSpec
    mode: Mode = Mode.STRICT
    boundary: BoundaryGeometry | None = None
    pick: tuple[int, int] | None = None
    smooth: int | None = None


def _line_of(text: str, key: str) -> int | None:
    needle = f'"{key}"'
    for lineno, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return lineno
    return None


def _int_list(value, name, text, length=None) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise PatchInputError("expected a list of integers", name, _line_of(text, name))
    if length is not None and len(value) != length:
        raise PatchInputError(f"expected {length} entries, got {len(value)}", name, _line_of(text, name))
    return value


def parse_patch_input(document: str | bytes) -> PatchInput:
    """Parse a JSON patch document.

    Recognized keys: ``edges`` (required), ``n``, ``mode``
    (``"strict"``/``"nonstrict"``), ``boundary`` (one list of ``[x, y]``
    points per side, ``e_i + 1`` each, sides sharing corners), ``pick``
    (``[k0, k1]``) and ``smooth`` (iterations).
    """
    text = document.decode() if isinstance(document, bytes) else document
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PatchInputError(exc.msg, line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise PatchInputError("top level must be an object")
    unknown = sorted(set(doc) - {"n", "edges", "mode", "boundary", "pick", "smooth"})
    if unknown:
        raise PatchInputError("unknown key", unknown[0], _line_of(text, unknown[0]))
    if "edges" not in doc:
        raise PatchInputError("missing required key", "edges")
    edges = _int_list(doc["edges"], "edges", text)
    if "n" in doc:
        if doc["n"] != len(edges):
            raise PatchInputError(
                f"n = {doc['n']} but {len(edges)} edge counts given", "n", _line_of(text, "n")
            )
    spec = PatchSpec(edges)

    mode = Mode.STRICT
    if "mode" in doc:
        try:
            mode = Mode.parse(str(doc["mode"]))
        except ValueError as exc:
            raise PatchInputError(str(exc), "mode", _line_of(text, "mode")) from None

    boundary = None
    if "boundary" in doc:
        sides = doc["boundary"]
        line = _line_of(text, "boundary")
        if not isinstance(sides, list) or len(sides) != len(edges):
            raise PatchInputError(f"expected {len(edges)} polylines", "boundary", line)
        for i, pts in enumerate(sides):
            ok = isinstance(pts, list) and all(
                isinstance(p, list) and len(p) == 2 and all(isinstance(c, (int, float)) for c in p)
                for p in pts
            )
            if not ok:
                raise PatchInputError("expected a list of [x, y] points", f"boundary[{i}]", line)
            if len(pts) != edges[i] + 1:
                raise PatchInputError(
                    f"side {i} needs {edges[i] + 1} points, got {len(pts)}", f"boundary[{i}]", line
                )
        boundary = BoundaryGeometry(sides)
        try:
            boundary.check(edges)
        except ValueError as exc:
            raise PatchInputError(str(exc), "boundary", line) from None

    pick = None
    if "pick" in doc:
        k = _int_list(doc["pick"], "pick", text, length=2)
        pick = (k[0], k[1])

    smooth = None
    if "smooth" in doc:
        smooth = doc["smooth"]
        if not isinstance(smooth, int) or isinstance(smooth, bool) or smooth < 0:
            raise PatchInputError("expected a non-negative integer", "smooth", _line_of(text, "smooth"))
    return PatchInput(spec, mode, boundary, pick, smooth)


def dump_patch_input(patch: PatchInput) -> bytes:
    doc: dict[str, Any] = {"n": patch.spec.n, "edges": list(patch.spec.edges), "mode": patch.mode.value}
    if patch.boundary is not None:
        doc["boundary"] = [p.tolist() for p in patch.boundary.sides]
    if patch.pick is not None:
        doc["pick"] = list(patch.pick)
    if patch.smooth is not None:
        doc["smooth"] = patch.smooth
    return _dumps(doc)


# ---------------------------------------------------------------------------
# outcome reports


@dataclass(frozen=True)
class OutcomeDocument:
    """Serializable view of one solve.

    ``intervals`` holds inclusive integer endpoints ``[lo, hi]`` per family
    parameter; ``solutions`` lists at most ``limit`` vectors, with
    ``solution_count`` giving the full number.
    """

    edges: tuple[int, ...]
    mode: str
    kind: str
    reasons: tuple[FailureReason, ...] = ()
    solutions: tuple[tuple[int, ...], ...] = ()
    picks: tuple[tuple[int, int] | None, ...] = ()
    solution_count: int = 0
    intervals: tuple[tuple[int, int], ...] | None = None
    tessellation_equivalent: bool = False
    singularities: tuple[dict, ...] = ()
    conditions: tuple[dict, ...] | None = None

    @classmethod
    def from_outcome(cls, outcome: SolveOutcome, limit: int | None = 1000, conditions=None) -> "OutcomeDocument":
        sols, picks = [], []
        for s, k in zip(outcome.iter_solutions(), outcome.iter_picks()):
            if limit is not None and len(sols) >= limit:
                break
            sols.append(tuple(s))
            picks.append(k)
        intervals = None
        if outcome.kind is OutcomeKind.FAMILY:
            intervals = tuple(p.inclusive() for p in outcome.params)
        return cls(
            edges=outcome.spec.edges,
            mode=outcome.mode.value,
            kind=outcome.kind.value,
            reasons=outcome.reasons,
            solutions=tuple(sols),
            picks=tuple(picks),
            solution_count=outcome.count(),
            intervals=intervals,
            tessellation_equivalent=outcome.tessellation_equivalent,
            singularities=tuple(classify(s).to_dict() for s in sols),
            conditions=None if conditions is None else tuple(c.to_dict() for c in conditions),
        )

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "n": len(self.edges),
            "edges": list(self.edges),
            "mode": self.mode,
            "kind": self.kind,
            "reasons": [r.to_dict() for r in self.reasons],
            "solutions": [list(s) for s in self.solutions],
            "picks": [None if k is None else list(k) for k in self.picks],
            "solution_count": self.solution_count,
            "intervals": None if self.intervals is None else [list(i) for i in self.intervals],
            "tessellation_equivalent": self.tessellation_equivalent,
            "singularities": [dict(d) for d in self.singularities],
            "conditions": None if self.conditions is None else [dict(c) for c in self.conditions],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OutcomeDocument":
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {d.get('schema')!r}")
        return cls(
            edges=tuple(d["edges"]),
            mode=d["mode"],
            kind=d["kind"],
            reasons=tuple(FailureReason.from_dict(r) for r in d["reasons"]),
            solutions=tuple(tuple(s) for s in d["solutions"]),
            picks=tuple(None if k is None else tuple(k) for k in d["picks"]),
            solution_count=d["solution_count"],
            intervals=None if d["intervals"] is None else tuple(tuple(i) for i in d["intervals"]),
            tessellation_equivalent=d["tessellation_equivalent"],
            singularities=tuple(d["singularities"]),
            conditions=None if d["conditions"] is None else tuple(d["conditions"]),
        )

    def to_json(self) -> bytes:
        return _dumps(self.to_dict())

    def to_text(self) -> bytes:
        lines = [f"patch n={len(self.edges)} edges={','.join(map(str, self.edges))} mode={self.mode}"]
        if self.kind == "infeasible":
            lines.append("verdict: not CC-able")
            for r in self.reasons:
                lines.append(f"  - {r.kind}: {r.describe()}")
        else:
            many = "unique" if self.kind == "unique" else f"{self.solution_count} solutions"
            lines.append(f"verdict: CC-able ({many})")
            if self.intervals is not None:
                (a, b), (c, d) = self.intervals
                lines.append(f"  k0 in [{a}, {b}], k1 in [{c}, {d}]")
            if self.tessellation_equivalent:
                lines.append("  all members give the same tessellation")
            for s, k, sing in zip(self.solutions, self.picks, self.singularities):
                tag = "" if k is None else f"k=({k[0]},{k[1]}) "
                lines.append(f"  {tag}s=({','.join(map(str, s))})  singularity: {sing['kind']}")
            if len(self.solutions) < self.solution_count:
                lines.append(f"  ... {self.solution_count - len(self.solutions)} more")
        if self.conditions:
            lines.append("")
            lines.append(f"{'condition':<14}{'index':>7}{'lhs':>8}{'rhs':>8}  {'relation':<20}status")
            for c in self.conditions:
                idx = "" if c["index"] is None else str(c["index"])
                lines.append(
                    f"{c['condition']:<14}{idx:>7}{c['lhs']:>8}{c['rhs']:>8}  {c['relation']:<20}{c['status']}"
                )
        return ("\n".join(lines) + "\n").encode()


def parse_outcome_json(data: str | bytes) -> OutcomeDocument:
    return OutcomeDocument.from_dict(json.loads(data))


def write_report(
    outcome: SolveOutcome | OutcomeDocument,
    format: str = "json",
    destination=None,
    limit: int | None = 1000,
) -> bytes:
    """Serialize an outcome as JSON or as a plain-text summary.

    Both forms carry the per-condition table when the closed forms apply
    (``n <= 8``).
    """
    if isinstance(outcome, SolveOutcome):
        from .solver import MAX_CLOSED_FORM_N, condition_report

        conds = condition_report(outcome.spec) if outcome.spec.n <= MAX_CLOSED_FORM_N else None
        doc = OutcomeDocument.from_outcome(outcome, limit=limit, conditions=conds)
    else:
        doc = outcome
    if format == "json":
        data = doc.to_json()
    elif format == "text":
        data = doc.to_text()
    else:
        raise ValueError(f"unknown report format {format!r}")
    return _emit(data, destination)


# ---------------------------------------------------------------------------
# meshes


def _fmt(x: float) -> str:
    return f"{x + 0.0:.9g}"


def write_mesh_obj(mesh: QuadMesh, destination=None) -> bytes:
    """Wavefront OBJ: one ``v x y 0.0`` line per vertex, one ``f`` per quad."""
    if mesh.vertices is None:
        raise ValueError("mesh has no positions; embed it first")
    s = "-" if mesh.s is None else ",".join(map(str, mesh.s))
    lines = [f"# ccquad patch n={len(mesh.edges)} edges={','.join(map(str, mesh.edges))} s={s}"]
    for x, y in mesh.vertices:
        lines.append(f"v {_fmt(x)} {_fmt(y)} 0.0")
    for quad in mesh.quads:
        lines.append("f " + " ".join(str(int(v) + 1) for v in quad))
    return _emit(("\n".join(lines) + "\n").encode(), destination)


def read_obj(data: str | bytes) -> tuple[np.ndarray, list[list[int]]]:
    """Minimal OBJ reader: vertex positions and 0-based polygon faces."""
    text = data.decode() if isinstance(data, bytes) else data
    verts, faces = [], []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            verts.append([float(c) for c in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(tok.split("/")[0]) - 1 for tok in parts[1:]])
    return np.array(verts, dtype=float).reshape(-1, 3), faces


def write_svg_preview(mesh: QuadMesh, destination=None, size: int = 512, margin: int = 16) -> bytes:
    """SVG 1.1 wireframe; the singular vertex is drawn as a filled dot."""
    if mesh.vertices is None:
        raise ValueError("mesh has no positions; embed it first")
    P = np.asarray(mesh.vertices, dtype=float)
    lo, hi = P.min(axis=0), P.max(axis=0)
    scale = (size - 2 * margin) / max(float((hi - lo).max()), 1e-12)

    def xy(v) -> tuple[str, str]:
        x = margin + (P[v, 0] - lo[0]) * scale
        y = size - margin - (P[v, 1] - lo[1]) * scale
        return f"{x + 0.0:.3f}", f"{y + 0.0:.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<g fill="none" stroke="#333" stroke-width="1" stroke-linejoin="round">',
    ]
    for quad in mesh.quads:
        pts = []
        for v in list(quad) + [quad[0]]:
            p = xy(int(v))
            if not pts or pts[-1] != p:
                pts.append(p)
        out.append(f'<polyline class="quad" points="{" ".join(f"{x},{y}" for x, y in pts)}"/>')
    out.append("</g>")
    out.append('<g fill="none" stroke="#000" stroke-width="2">')
    for chain in mesh.boundary_chains:
        pts = []
        for v in chain:
            p = xy(v)
            if not pts or pts[-1] != p:
                pts.append(p)
        if len(pts) > 1:
            out.append(f'<polyline class="side" points="{" ".join(f"{x},{y}" for x, y in pts)}"/>')
    out.append("</g>")
    if mesh.singular_vertex is not None:
        x, y = xy(mesh.singular_vertex)
        out.append(f'<circle class="singular" cx="{x}" cy="{y}" r="5" fill="#d00"/>')
    out.append("</svg>")
    return _emit(("\n".join(out) + "\n").encode(), destination)


# ---------------------------------------------------------------------------
# scan reports


def write_scan_report(report, format: str = "json", destination=None) -> bytes:
    """Serialize a :class:`ccquad.scan.ScanReport` as JSON or a text table."""
    d = report.to_dict()
    if format == "json":
        return _emit(_dumps(d), destination)
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    lines = [
        f"scan n={d['n']} e in [{d['e_min']}, {d['e_max']}] mode={d['mode']} "
        f"checks={','.join(d['checks']) or '-'}",
        f"{'instances':<22}{d['total']:>10}",
        f"{'parity passing':<22}{d['parity_passing']:>10}",
        f"{'CC-able':<22}{d['cc_able']:>10}",
        f"{'solutions':<22}{d['total_solutions']:>10}",
    ]
    lines.append("multiplicity  instances")
    for k, v in d["multiplicity"].items():
        lines.append(f"{k:>12}  {v:>9}")
    lines.append("zero spokes   solutions")
    for k, v in d["zero_counts"].items():
        lines.append(f"{k:>11}  {v:>10}")
    if d["max_zero_count"] is not None:
        lines.append(f"max zero spokes: {d['max_zero_count']}")
        for ex in d["extremal"]:
            lines.append(f"  e={ex['edges']} s={ex['s']}")
    if d["skipped"]:
        lines.append(f"skipped (oracle budget): {len(d['skipped'])}")
    lines.append(f"counterexamples: {len(d['counterexamples'])}")
    for ce in d["counterexamples"]:
        lines.append(f"  {ce['check']}: e={ce['edges']}")
    lines.append("OK" if d["ok"] else "FAILED")
    return _emit(("\n".join(lines) + "\n").encode(), destination)
