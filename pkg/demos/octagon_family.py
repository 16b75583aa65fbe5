"""Octagons have a two-parameter family of layouts.

When n is a multiple of four the spokes are not pinned down. Two free
integers ``k0`` and ``k1`` slide the singular vertex around the patch.
This script lists the family for e = (4, 3, 4, 3, 4, 3, 4, 3) and writes
one SVG per member.
"""

from pathlib import Path

from ccquad import PatchSpec, classify, solve
from ccquad.io_formats import write_svg_preview
from ccquad.quadrangulator import build_topology, embed_geometry, mesh_stats, synthesize_boundary

HERE = Path(__file__).resolve().parent
OUT = HERE / "octagon_family"
OUT.mkdir(exist_ok=True)

spec = PatchSpec((4, 3, 4, 3, 4, 3, 4, 3))
outcome = solve(spec)
k0, k1 = outcome.params
print(f"family: k0 in {k0}, k1 in {k1}, {outcome.count()} members")
print("rule: " + ", ".join(f"s{i} = {x}" for i, x in enumerate(outcome.rule)) + "\n")

boundary = synthesize_boundary(spec)
for s, (a, b) in zip(outcome.iter_solutions(), outcome.iter_picks()):
    mesh = embed_geometry(build_topology(spec, s), boundary, smoothing_iters=5)
    st = mesh_stats(mesh)
    path = OUT / f"k{a}_{b}.svg"
    write_svg_preview(mesh, path)
    print(f"k=({a},{b})  s={s}  F={st.F}  {classify(s)}  -> {path.name}")

# Any pick outside the open intervals would zero a spoke.
print(f"\n(0, 1) admissible? {0 in k0 and 1 in k1}")
