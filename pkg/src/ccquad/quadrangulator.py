"""Explicit quad meshes from subdivision vectors.

Layout conventions
------------------
Side ``i`` runs from corner ``i`` to corner ``i + 1`` counterclockwise. It is
split at ``m_i`` into a first part of ``s[i-1]`` edges and a second part of
``s[i+1]`` edges. A spoke of ``s[i]`` edges joins ``m_i`` to the center.
Region ``i`` sits at corner ``i + 1`` between spokes ``i`` and ``i + 1`` and
is a regular grid of ``s[i] x s[i+1]`` quads.

Chains of length zero collapse: their endpoints are merged, and a region of
zero width welds its two long sides together. This is how non-strict
solutions place the irregular vertex on the boundary or on a corner.
"""

from __future__ import annotations

import dataclasses
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import PatchSpec, satisfies_rows


@dataclass(frozen=True)
class QuadMesh:
    """Indexed planar quad mesh of one patch.

    Attributes
    ----------
    n_vertices : int
        Vertex count (valid also before positions are assigned).
    quads : ndarray of shape (F, 4)
        Counterclockwise vertex indices.
    boundary_chains : list of list of int
        Vertex indices of side ``i`` from corner ``i`` to corner ``i + 1``.
    corner_vertices : list of int
    singular_vertex : int or None
        The center vertex; ``None`` for four-sided patches.
    vertices : ndarray of shape (V, 2) or None
        Positions, once embedded.
    """

    n_vertices: int
    quads: np.ndarray
    boundary_chains: list[list[int]]
    corner_vertices: list[int]
    singular_vertex: int | None = None
    vertices: np.ndarray | None = None
    edges: tuple[int, ...] = ()
    s: tuple[int, ...] | None = None
    # construction scaffolding for embedding: chains and grids of vertex ids
    spokes: list[list[int]] = field(default_factory=list, repr=False)
    regions: list[np.ndarray] = field(default_factory=list, repr=False)

    @property
    def n_faces(self) -> int:
        return len(self.quads)

    @property
    def positioned(self) -> bool:
        return self.vertices is not None

    def edge_list(self) -> list[tuple[int, int]]:
        """Undirected edges, sorted."""
        return sorted(_edge_faces(self.quads))


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _grid_keys(p, q, a, b, bottom, left, right, top, interior):
    """All chain keys naming grid vertex ``(p, q)`` of an ``a x b`` grid."""
    keys = []
    if q == 0:
        keys.append(bottom(p))
    if p == 0:
        keys.append(left(q))
    if p == a:
        keys.append(right(q))
    if q == b:
        keys.append(top(p))
    return keys or [interior]


def build_topology(spec: PatchSpec, s: Sequence[int]) -> QuadMesh:
    """Connectivity of the quadrangulation described by ``s``.

    Parameters
    ----------
    spec : PatchSpec
    s : sequence of int
        Spoke lengths satisfying ``e[i] == s[i-1] + s[i+1]``, all ``>= 0``.
        For ``n = 4`` any family member is accepted and the plain
        ``e0 x e1`` grid is produced.

    Raises
    ------
    ValueError
        If ``s`` does not solve the rows for ``spec`` or has negative entries.
    """
    e = spec.edges
    n = spec.n
    s = tuple(int(v) for v in s)
    if n < 2:
        raise ValueError("need at least two sides")
    if len(s) != n or not satisfies_rows(e, s):
        raise ValueError(f"s = {s} does not satisfy e[i] = s[i-1] + s[i+1] for e = {e}")
    if min(s) < 0:
        raise ValueError(f"negative spoke length in s = {s}")
    if min(e) < 1:
        raise ValueError("every side needs at least one edge")

    uf = _UnionFind()
    for j in range(n):
        uf.union(("side", j, e[j]), ("side", (j + 1) % n, 0))

    grids = []  # (a, b, key function)
    if n == 4:
        a, b = e[0], e[1]

        def keys4(p, q):
            return _grid_keys(
                p, q, a, b,
                bottom=lambda p: ("side", 0, p),
                left=lambda q: ("side", 3, e[3] - q),
                right=lambda q: ("side", 1, q),
                top=lambda p: ("side", 2, e[2] - p),
                interior=("int", 0, p, q),
            )

        grids.append((a, b, keys4))
    else:
        for j in range(n):
            uf.union(("spoke", j, 0), ("side", j, s[j - 1]))
            uf.union(("spoke", j, s[j]), ("spoke", 0, s[0]))
        for i in range(n):
            a, b = s[i], s[(i + 1) % n]
            grids.append((a, b, _region_keys(i, n, e, s)))

    region_ids = []
    for a, b, keys in grids:
        for p in range(a + 1):
            for q in range(b + 1):
                ks = keys(p, q)
                for k in ks[1:]:
                    uf.union(ks[0], k)

    # ids in a fixed order: boundary loop, spokes, region interiors
    ids: dict = {}

    def vid(key) -> int:
        root = uf.find(key)
        if root not in ids:
            ids[root] = len(ids)
        return ids[root]

    chains = [[vid(("side", j, t)) for t in range(e[j] + 1)] for j in range(n)]
    spokes = [] if n == 4 else [[vid(("spoke", j, t)) for t in range(s[j] + 1)] for j in range(n)]
    quads = []
    for a, b, keys in grids:
        g = np.empty((a + 1, b + 1), dtype=np.int64)
        for p in range(a + 1):
            for q in range(b + 1):
                g[p, q] = vid(keys(p, q)[0])
        region_ids.append(g)
        for p in range(a):
            for q in range(b):
                quads.append((g[p, q], g[p + 1, q], g[p + 1, q + 1], g[p, q + 1]))

    quads_arr = np.array(quads, dtype=np.int64).reshape(-1, 4)
    return QuadMesh(
        n_vertices=len(ids),
        quads=quads_arr,
        boundary_chains=chains,
        corner_vertices=[c[0] for c in chains],
        singular_vertex=None if n == 4 else vid(("spoke", 0, s[0])),
        edges=tuple(e),
        s=s,
        spokes=spokes,
        regions=region_ids,
    )


def _region_keys(i, n, e, s):
    """Key function for region ``i``: ``p`` runs along side ``i+1`` from
    corner ``i+1``, ``q`` backwards along side ``i``."""
    j = (i + 1) % n
    a, b = s[i], s[j]

    def keys(p, q):
        return _grid_keys(
            p, q, a, b,
            bottom=lambda p: ("side", j, p),
            left=lambda q: ("side", i, e[i] - q),
            right=lambda q: ("spoke", j, q),
            top=lambda p: ("spoke", i, p),
            interior=("int", i, p, q),
        )

    return keys


# ---------------------------------------------------------------------------
# geometry


@dataclass(frozen=True)
class BoundaryGeometry:
    """Per-side polylines; side ``i`` holds ``e_i + 1`` points.

    Consecutive sides share corner points and the loop closes.
    """

    sides: tuple[np.ndarray, ...]

    def __init__(self, sides):
        object.__setattr__(
            self, "sides", tuple(np.asarray(p, dtype=float).reshape(-1, 2) for p in sides)
        )

    @property
    def corners(self) -> np.ndarray:
        return np.array([p[0] for p in self.sides])

    def loop(self) -> np.ndarray:
        """Closed loop of boundary points without repetition."""
        return np.concatenate([p[:-1] for p in self.sides])

    def check(self, edges: Sequence[int], require_simple: bool = False) -> None:
        """Raise ``ValueError`` on chain-length or closure mismatch."""
        n = len(self.sides)
        if n != len(edges):
            raise ValueError(f"boundary has {n} sides, patch has {len(edges)}")
        for i, (pts, ei) in enumerate(zip(self.sides, edges)):
            if len(pts) != ei + 1:
                raise ValueError(f"side {i}: expected {ei + 1} points, got {len(pts)}")
        for i in range(n):
            a = self.sides[i][-1]
            b = self.sides[(i + 1) % n][0]
            if not np.allclose(a, b, rtol=0, atol=1e-12):
                raise ValueError(f"side {i} does not end where side {(i + 1) % n} starts")
        corners = self.corners
        for i in range(n):
            for j in range(i + 1, n):
                if np.allclose(corners[i], corners[j], rtol=0, atol=1e-12):
                    raise ValueError(f"corners {i} and {j} coincide")
        if require_simple and not is_simple_loop(self.loop()):
            raise ValueError("boundary loop self-intersects")


def _segments_cross(p1, p2, p3, p4) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1, d2 = orient(p3, p4, p1), orient(p3, p4, p2)
    d3, d4 = orient(p1, p2, p3), orient(p1, p2, p4)
    return (d1 * d2 < 0) and (d3 * d4 < 0)


def is_simple_loop(points: np.ndarray) -> bool:
    """True when no two non-adjacent segments of the closed loop cross
    and no point repeats."""
    m = len(points)
    if len({(float(x), float(y)) for x, y in points}) != m:
        return False
    for i in range(m):
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue
            if _segments_cross(points[i], points[(i + 1) % m], points[j], points[(j + 1) % m]):
                return False
    return True


def synthesize_boundary(spec: PatchSpec) -> BoundaryGeometry:
    """Regular polygon on the unit circle, first corner at the top.

    Sides are chords split uniformly; for two sides, the two semicircles.
    """
    n = spec.n
    if n < 2:
        raise ValueError("need at least two sides")
    angles = 2 * np.pi * np.arange(n) / n + np.pi / 2
    corners = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    sides = []
    for j, ej in enumerate(spec.edges):
        t = np.arange(ej + 1) / ej
        if n == 2:
            theta = angles[j] + np.pi * t
            pts = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        else:
            pts = corners[j] + np.outer(t, corners[(j + 1) % n] - corners[j])
        pts[0] = corners[j]
        pts[-1] = corners[(j + 1) % n]
        sides.append(pts)
    return BoundaryGeometry(sides)


def _neighbors(mesh: QuadMesh) -> list[set[int]]:
    nbrs: list[set[int]] = [set() for _ in range(mesh.n_vertices)]
    for a, b in _edge_faces(mesh.quads):
        nbrs[a].add(b)
        nbrs[b].add(a)
    return nbrs


def embed_geometry(mesh: QuadMesh, boundary: BoundaryGeometry, smoothing_iters: int = 0) -> QuadMesh:
    """Place vertices inside ``boundary``.

    Boundary points come from the polylines, the center is the mean of the
    split points, spokes are straight, each region is filled by a Coons patch
    over its four bounding chains. Then ``smoothing_iters`` Jacobi rounds of
    neighbor averaging move the interior vertices.
    """
    boundary.check(mesh.edges)
    n = len(mesh.edges)
    pos = np.full((mesh.n_vertices, 2), np.nan)
    for chain, pts in zip(mesh.boundary_chains, boundary.sides):
        for v, x in zip(chain, pts):
            if np.isnan(pos[v, 0]):
                pos[v] = x

    if mesh.spokes:
        mids = np.array([mesh.spokes[j][0] for j in range(n)])
        center = mesh.spokes[0][-1]
        if np.isnan(pos[center, 0]):
            pos[center] = pos[mids].mean(axis=0)
        for chain in mesh.spokes:
            m = len(chain) - 1
            for t, v in enumerate(chain[1:-1], start=1):
                if np.isnan(pos[v, 0]):
                    pos[v] = pos[chain[0]] + (pos[chain[-1]] - pos[chain[0]]) * (t / m)

    for g in mesh.regions:
        a, b = g.shape[0] - 1, g.shape[1] - 1
        if a < 1 or b < 1:
            continue
        P = pos[g]  # (a+1, b+1, 2), rim already set
        u = (np.arange(a + 1) / a)[:, None, None]
        v = (np.arange(b + 1) / b)[None, :, None]
        bottom, top = P[:, :1], P[:, -1:]
        left, right = P[:1, :], P[-1:, :]
        X = (
            (1 - v) * bottom + v * top + (1 - u) * left + u * right
            - (1 - u) * (1 - v) * P[0, 0] - u * (1 - v) * P[-1, 0]
            - (1 - u) * v * P[0, -1] - u * v * P[-1, -1]
        )
        inner = g[1:-1, 1:-1].ravel()
        todo = np.isnan(pos[inner, 0])
        pos[inner[todo]] = X[1:-1, 1:-1].reshape(-1, 2)[todo]

    if np.isnan(pos).any():
        raise RuntimeError("some vertices were not reached by the embedding")

    if smoothing_iters > 0:
        on_boundary = np.zeros(mesh.n_vertices, dtype=bool)
        for chain in mesh.boundary_chains:
            on_boundary[chain] = True
        nbrs = _neighbors(mesh)
        free = [v for v in range(mesh.n_vertices) if not on_boundary[v] and nbrs[v]]
        nb_lists = [sorted(nbrs[v]) for v in free]
        for _ in range(smoothing_iters):
            new = pos.copy()
            for v, nb in zip(free, nb_lists):
                new[v] = pos[nb].mean(axis=0)
            pos = new

    return dataclasses.replace(mesh, vertices=pos)


def signed_areas(mesh: QuadMesh) -> np.ndarray:
    """Shoelace area of every quad (positive when counterclockwise)."""
    if mesh.vertices is None:
        raise ValueError("mesh has no positions")
    P = mesh.vertices[mesh.quads]  # (F, 4, 2)
    x, y = P[..., 0], P[..., 1]
    return 0.5 * (x * np.roll(y, -1, axis=1) - np.roll(x, -1, axis=1) * y).sum(axis=1)


# ---------------------------------------------------------------------------
# statistics and validation


def _edge_faces(quads) -> dict[tuple[int, int], list[int]]:
    out: dict[tuple[int, int], list[int]] = defaultdict(list)
    for f, quad in enumerate(quads):
        for k in range(4):
            a, b = int(quad[k]), int(quad[(k + 1) % 4])
            out[(min(a, b), max(a, b))].append(f)
    return out


@dataclass(frozen=True)
class MeshStats:
    V: int
    E: int
    F: int
    B: int
    interior_irregular: dict[int, int]
    boundary_irregular: dict[int, int]
    corner_irregular: dict[int, int]
    valency: tuple[int, ...]

    @property
    def euler(self) -> int:
        return self.V - self.E + self.F

    def invariant_vector(self) -> tuple:
        """Isomorphism-invariant summary: valency histogram, F and B."""
        hist = tuple(sorted(Counter(self.valency).items()))
        return hist, self.F, self.B


def mesh_stats(mesh: QuadMesh) -> MeshStats:
    """Counts and irregular vertices.

    Interior vertices are regular at valency 4, non-corner boundary
    vertices at 3, corners at 2.
    """
    ef = _edge_faces(mesh.quads)
    chain_edges = set()
    for chain in mesh.boundary_chains:
        for a, b in zip(chain, chain[1:]):
            chain_edges.add((min(a, b), max(a, b)))
    all_edges = set(ef) | chain_edges
    val = [0] * mesh.n_vertices
    for a, b in all_edges:
        val[a] += 1
        val[b] += 1
    on_boundary = {v for chain in mesh.boundary_chains for v in chain}
    corners = set(mesh.corner_vertices)
    interior, bnd, crn = {}, {}, {}
    for v in range(mesh.n_vertices):
        if v in corners:
            if val[v] != 2:
                crn[v] = val[v]
        elif v in on_boundary:
            if val[v] != 3:
                bnd[v] = val[v]
        elif val[v] != 4:
            interior[v] = val[v]
    return MeshStats(
        V=mesh.n_vertices,
        E=len(all_edges),
        F=mesh.n_faces,
        B=sum(len(c) - 1 for c in mesh.boundary_chains),
        interior_irregular=interior,
        boundary_irregular=bnd,
        corner_irregular=crn,
        valency=tuple(val),
    )


@dataclass(frozen=True)
class Violation:
    kind: str
    simplex: tuple
    message: str


def validate_mesh(mesh: QuadMesh, geometry: bool = False) -> list[Violation]:
    """Check the mesh invariants; an empty list means the mesh is valid.

    Checks quad validity, edge-manifoldness, a single winding orientation,
    that boundary edges are exactly the side chains (an open seam shows up as
    a ``weld`` violation) and the chain lengths. With ``geometry`` set and
    positions present, also reports quads of non-positive area and
    coincident vertices.
    """
    out: list[Violation] = []
    V = mesh.n_vertices
    for f, quad in enumerate(mesh.quads):
        q = [int(x) for x in quad]
        if any(v < 0 or v >= V for v in q):
            out.append(Violation("quad", (f,), f"quad {f} references a missing vertex"))
        elif len(set(q)) != 4:
            out.append(Violation("quad", (f,), f"quad {f} repeats a vertex"))

    ef = _edge_faces(mesh.quads)
    for edge, faces in sorted(ef.items()):
        if len(faces) > 2:
            out.append(Violation("manifold", edge, f"edge {edge} borders {len(faces)} quads"))

    out.extend(_orientation_violations(mesh, ef))

    chain_edges: dict[tuple[int, int], int] = {}
    for i, chain in enumerate(mesh.boundary_chains):
        if mesh.edges and len(chain) - 1 != mesh.edges[i]:
            out.append(
                Violation("chain", (i,), f"side {i} has {len(chain) - 1} edges, expected {mesh.edges[i]}")
            )
        for a, b in zip(chain, chain[1:]):
            chain_edges[(min(a, b), max(a, b))] = i
    border = {edge for edge, faces in ef.items() if len(faces) == 1}
    for edge in sorted(border - set(chain_edges)):
        out.append(Violation("weld", edge, f"edge {edge} is open but lies on no side"))
    for edge in sorted(set(chain_edges) - border):
        if mesh.n_faces and len(ef.get(edge, ())) != 1:
            out.append(
                Violation("boundary", edge, f"side {chain_edges[edge]} edge {edge} is not a border edge")
            )

    used = {int(v) for v in mesh.quads.ravel()} | {v for c in mesh.boundary_chains for v in c}
    for v in range(V):
        if v not in used:
            out.append(Violation("isolated", (v,), f"vertex {v} is unused"))

    if geometry and mesh.vertices is not None:
        for f, area in enumerate(signed_areas(mesh)):
            if area <= 0:
                out.append(Violation("inverted", (f,), f"quad {f} has signed area {area:.3g}"))
        seen: dict[tuple[float, float], int] = {}
        for v, (x, y) in enumerate(mesh.vertices):
            key = (round(float(x), 12), round(float(y), 12))
            if key in seen:
                out.append(Violation("weld", (seen[key], v), f"vertices {seen[key]} and {v} coincide"))
            else:
                seen[key] = v
    return out


def _orientation_violations(mesh, ef) -> list[Violation]:
    """Flag quads whose winding disagrees with the majority of their component."""
    F = mesh.n_faces
    def forward(f, a, b):
        quad = [int(x) for x in mesh.quads[f]]
        return any(quad[k] == a and quad[(k + 1) % 4] == b for k in range(4))

    adj: list[list[tuple[int, bool]]] = [[] for _ in range(F)]
    for (a, b), faces in ef.items():
        if len(faces) != 2:
            continue
        f, g = faces
        # both faces traversing the edge the same way means opposite windings
        same = forward(f, a, b) == forward(g, a, b)
        adj[f].append((g, same))
        adj[g].append((f, same))
    flip = [-1] * F
    out = []
    for root in range(F):
        if flip[root] >= 0:
            continue
        flip[root] = 0
        comp, stack, conflict = [root], [root], False
        while stack:
            f = stack.pop()
            for g, same in adj[f]:
                want = flip[f] ^ int(same)
                if flip[g] < 0:
                    flip[g] = want
                    comp.append(g)
                    stack.append(g)
                elif flip[g] != want:
                    conflict = True
        if conflict:
            out.append(Violation("orientation", tuple(sorted(comp)), "component is not orientable"))
            continue
        ones = sorted(f for f in comp if flip[f])
        zeros = sorted(f for f in comp if not flip[f])
        minority = ones if len(ones) <= len(zeros) else zeros
        for f in minority:
            out.append(Violation("orientation", (f,), f"quad {f} is wound against its neighbors"))
    return out
