"""Letting the singularity touch the boundary.

Strict layouts need every spoke to have positive length. Allowing zero-length
spokes moves the irregular vertex onto a side or a corner, which rescues
some patches that are otherwise infeasible.
"""

from ccquad import Mode, PatchSpec, classify, solve
from ccquad.quadrangulator import build_topology, mesh_stats

cases = [(2, 2, 2, 4, 2), (4, 2, 2), (6, 2, 2), (1, 1, 1, 1, 1, 1, 1, 1)]

for edges in cases:
    spec = PatchSpec(edges)
    print(f"edges {edges}")
    try:
        strict = solve(spec, Mode.STRICT)
        print(f"  strict:     {'CC-able' if strict.feasible else 'infeasible'}")
        for r in strict.reasons:
            print(f"              {r.describe()}")
    except ValueError as exc:
        print(f"  strict:     rejected ({exc})")
    loose = solve(spec, Mode.NONSTRICT)
    print(f"  non-strict: {loose.count()} solution(s)")
    for s in list(loose.iter_solutions())[:3]:
        st = mesh_stats(build_topology(spec, s))
        irregular = {**st.interior_irregular, **st.boundary_irregular, **st.corner_irregular}
        print(f"    s={s}  {classify(s)}  irregular valencies {sorted(irregular.values())}")
    print()
