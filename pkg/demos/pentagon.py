"""A five-sided patch with one valency-5 vertex.

Solves the pentagon with edge counts (6, 4, 3, 5, 4), builds its quad
mesh and writes OBJ and SVG files next to this script.

Run with ``python3 demos/pentagon.py``.
"""

from pathlib import Path

from ccquad import Mode, PatchSpec, condition_report, solve
from ccquad.io_formats import write_mesh_obj, write_svg_preview
from ccquad.quadrangulator import build_topology, embed_geometry, mesh_stats, synthesize_boundary

HERE = Path(__file__).resolve().parent

spec = PatchSpec((6, 4, 3, 5, 4))
print(f"patch edges: {spec.edges}  (sum {sum(spec.edges)}, even)")

# The per-condition table explains the verdict before we solve.
for c in condition_report(spec):
    idx = "" if c.index is None else c.index
    print(f"  {c.condition:<12} {idx!s:>2}  {c.lhs:>3} {c.relation:<3} {c.rhs:<3} -> {c.status.value}")

outcome = solve(spec, Mode.STRICT)
s = outcome.solution
print(f"\nunique subdivision vector s = {s}")
for i in range(spec.n):
    left, right = s[(i - 1) % spec.n], s[(i + 1) % spec.n]
    print(f"  side {i}: {spec.edges[i]} = {left} + {right}")

mesh = build_topology(spec, s)
mesh = embed_geometry(mesh, synthesize_boundary(spec), smoothing_iters=10)
st = mesh_stats(mesh)
print(f"\nmesh: V={st.V} E={st.E} F={st.F}, irregular interior vertices {st.interior_irregular}")

write_mesh_obj(mesh, HERE / "pentagon.obj")
write_svg_preview(mesh, HERE / "pentagon.svg")
print("wrote pentagon.obj and pentagon.svg")
