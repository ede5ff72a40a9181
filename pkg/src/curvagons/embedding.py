"""Spring-relaxation 3D embedding, OBJ export, and planar net unfolding.

Every surface vertex becomes a mesh node; faces with more than three sides
get one extra center node.  Springs hold boundary edges at the edge length
and center spokes at the circumradius, so each face is internally
triangulated and nearly rigid.  Gradient descent with backtracking line
search finds a low-energy 3D shape; nets unfold the face-adjacency spanning
tree into the plane with overlap detection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import shapely
from shapely.geometry import Polygon

from .errors import CoincidentNodes, Disconnected
from .geodesics import face_chart, transition
from .surface import FaceId, SlotRef, Surface


def circumradius(sides: int, edge_length) -> float:
    return float(edge_length) / (2.0 * math.sin(math.pi / sides))


@dataclass
class EmbeddedMesh:
    surface: Surface
    nodes: list  # ("v", vertex index) | ("c", face id), deterministic order
    springs: list  # (node index u, node index v, rest length)
    positions: np.ndarray  # (len(nodes), 3)
    corner_node: dict  # (face, corner index) -> node index

    def copy(self) -> "EmbeddedMesh":
        return EmbeddedMesh(self.surface, self.nodes, self.springs,
                            self.positions.copy(), self.corner_node)


def _mesh_structure(s: Surface):
    verts = s.vertices()
    corner_vertex = {}
    for vi, v in enumerate(verts):
        for c in v.corners:
            corner_vertex[c] = vi
    nodes = [("v", vi) for vi in range(len(verts))]
    node_of = {n: i for i, n in enumerate(nodes)}
    for fid in sorted(s.faces):
        if s.faces[fid].sides > 3:
            node_of[("c", fid)] = len(nodes)
            nodes.append(("c", fid))
    corner_node = {c: node_of[("v", vi)] for c, vi in corner_vertex.items()}
    springs = []
    seen = set()
    for fid in sorted(s.faces):
        f = s.faces[fid]
        n = f.sides
        for i in range(n):
            u = corner_node[(fid, i)]
            v = corner_node[(fid, (i + 1) % n)]
            key = (min(u, v), max(u, v))
            if key not in seen and u != v:
                seen.add(key)
                springs.append((key[0], key[1], float(f.edge_length)))
        if n > 3:
            c = node_of[("c", fid)]
            r = circumradius(n, f.edge_length)
            for i in range(n):
                u = corner_node[(fid, i)]
                key = (min(u, c), max(u, c))
                if key not in seen:
                    seen.add(key)
                    springs.append((key[0], key[1], r))
    return nodes, springs, corner_node


def _layers(s: Surface, corner_node, nnodes: int, root: FaceId):
    """Breadth-first node layers over the spring graph, seeded by root face."""
    adjacency = [[] for _ in range(nnodes)]
    for fid in sorted(s.faces):
        n = s.faces[fid].sides
        for i in range(n):
            u = corner_node[(fid, i)]
            v = corner_node[(fid, (i + 1) % n)]
            adjacency[u].append(v)
            adjacency[v].append(u)
    start = sorted({corner_node[(root, i)] for i in range(s.faces[root].sides)})
    depth = {u: 0 for u in start}
    frontier = start
    layers = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adjacency[u]:
                if v not in depth:
                    depth[v] = depth[u] + 1
                    nxt.append(v)
        frontier = sorted(set(nxt))
        if frontier:
            layers.append(frontier)
    if len(depth) != len({v for a in adjacency for v in a} | set(start)):
        pass  # disconnected handled by caller via surface check
    return layers, depth, adjacency


def init_embedding(s: Surface, seed: int = 0) -> EmbeddedMesh:
    """Deterministic breadth-first layered placement plus a seeded
    perturbation of 0.01 * edge length."""
    if not s.is_connected():
        raise Disconnected("embedding needs a connected surface")
    nodes, springs, corner_node = _mesh_structure(s)
    root = min(s.faces)
    edge = float(s.faces[root].edge_length)
    layers, depth, adjacency = _layers(s, corner_node, len(nodes), root)
    pos = np.zeros((len(nodes), 3))
    closed = s.is_closed()
    if closed:
        # latitude rings from pole to pole on an equal-area sphere
        area = sum(
            f.sides * float(f.edge_length) ** 2 / (4.0 * math.tan(math.pi / f.sides))
            for f in s.faces.values()
        )
        sphere_r = math.sqrt(area / (4.0 * math.pi))
        nlayers = len(layers)
        azimuth = {}
        for k, layer in enumerate(layers):
            if k == 0:
                chart = face_chart(s, root)
                for i in range(s.faces[root].sides):
                    azimuth[corner_node[(root, i)]] = 2.0 * math.pi * i / len(chart)
            else:
                # order the layer by the mean azimuth of placed neighbors
                keyed = []
                for u in layer:
                    angs = [azimuth[v] for v in adjacency[u] if v in azimuth]
                    x = sum(math.cos(a) for a in angs)
                    y = sum(math.sin(a) for a in angs)
                    keyed.append((math.atan2(y, x) % (2.0 * math.pi), u))
                keyed.sort()
                for j, (_, u) in enumerate(keyed):
                    azimuth[u] = keyed[0][0] + 2.0 * math.pi * j / len(keyed)
            for u in layer:
                a = azimuth[u]
                polar = math.pi * (k + 0.5) / nlayers
                r = sphere_r * math.sin(polar)
                z = sphere_r * math.cos(polar)
                pos[u] = (r * math.cos(a), r * math.sin(a), z)
    else:
        # breadth-first unfolding into the plane: exact (stress-free) for
        # flat patches, overlapping for curved ones; the z perturbation
        # below lets curved patches buckle out of the plane
        net = unfold_net(s, root, "bfs")
        placed = set()
        for fid in sorted(net.placements):
            chart = net.placements[fid]
            for i in range(s.faces[fid].sides):
                u = corner_node[(fid, i)]
                if u not in placed:
                    placed.add(u)
                    pos[u, :2] = chart[i]
    # face centers at the centroid of their corners
    node_index = {n: i for i, n in enumerate(nodes)}
    for kind, fid in nodes:
        if kind == "c":
            ring = [corner_node[(fid, i)] for i in range(s.faces[fid].sides)]
            pos[node_index[("c", fid)]] = pos[ring].mean(axis=0)
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(pos.shape) * 0.01 * edge
    if not closed:
        # the perturbation exists to break planar degeneracy for curved
        # patches; an intrinsically flat patch already sits at its exact
        # planar minimum, where out-of-plane noise would persist in soft
        # wrinkle modes, so keep the perturbation in-plane there
        from .curvature import vertex_defect

        if all(vertex_defect(s, v) == 0 for v in s.vertices() if v.is_interior):
            noise[:, 2] = 0.0
    pos += noise
    return EmbeddedMesh(s, nodes, springs, pos, corner_node)


def _spring_arrays(m: EmbeddedMesh):
    idx = np.array([(u, v) for u, v, _ in m.springs], dtype=int)
    rest = np.array([r for _, _, r in m.springs])
    return idx, rest


def energy(m: EmbeddedMesh) -> float:
    idx, rest = _spring_arrays(m)
    d = m.positions[idx[:, 0]] - m.positions[idx[:, 1]]
    lengths = np.linalg.norm(d, axis=1)
    if np.any(lengths < 1e-12):
        raise CoincidentNodes("two spring endpoints coincide")
    return float(np.sum((lengths - rest) ** 2))


def gradient(m: EmbeddedMesh) -> np.ndarray:
    idx, rest = _spring_arrays(m)
    d = m.positions[idx[:, 0]] - m.positions[idx[:, 1]]
    lengths = np.linalg.norm(d, axis=1)
    if np.any(lengths < 1e-12):
        raise CoincidentNodes("two spring endpoints coincide")
    coef = (2.0 * (lengths - rest) / lengths)[:, None] * d
    g = np.zeros_like(m.positions)
    np.add.at(g, idx[:, 0], coef)
    np.add.at(g, idx[:, 1], -coef)
    return g


@dataclass
class RelaxReport:
    iterations: int
    final_energy: float
    max_edge_residual: float  # max |length - rest| / rest over springs
    gradient_norm: float
    converged: bool


def _max_residual(m: EmbeddedMesh) -> float:
    idx, rest = _spring_arrays(m)
    lengths = np.linalg.norm(m.positions[idx[:, 0]] - m.positions[idx[:, 1]], axis=1)
    return float(np.max(np.abs(lengths - rest) / rest))


def relax(m: EmbeddedMesh, max_iters: int = 20000, tol: float = 1e-8):
    """Gradient descent with Armijo backtracking (c = 1e-4, factor 0.5);
    centroid re-centered every iteration; energy never increases."""
    m = m.copy()
    e = energy(m)
    step = 1.0
    it = 0
    gnorm = float(np.linalg.norm(gradient(m)))
    while it < max_iters:
        g = gradient(m)
        gnorm = float(np.linalg.norm(g))
        if gnorm < tol:
            break
        g2 = gnorm * gnorm
        alpha = step
        while True:
            trial = m.positions - alpha * g
            mt = EmbeddedMesh(m.surface, m.nodes, m.springs, trial, m.corner_node)
            try:
                et = energy(mt)
            except CoincidentNodes:
                et = math.inf
            if et <= e - 1e-4 * alpha * g2:
                break
            alpha *= 0.5
            if alpha < 1e-18:
                break
        if alpha < 1e-18:
            break
        m.positions = trial - trial.mean(axis=0)
        e = et
        step = alpha * 2.0
        it += 1
    report = RelaxReport(it, e, _max_residual(m), gnorm, gnorm < tol)
    return m, report


# -- OBJ export ----------------------------------------------------------------


def export_obj(m: EmbeddedMesh) -> str:
    """Wavefront OBJ text: one v line per node (9 significant digits), faces
    fan-triangulated around their center node; triangles emitted directly."""
    node_index = {n: i for i, n in enumerate(m.nodes)}
    lines = []
    for p in m.positions:
        lines.append("v " + " ".join(f"{c:.9g}" for c in p))
    s = m.surface
    for fid in sorted(s.faces):
        n = s.faces[fid].sides
        ring = [m.corner_node[(fid, i)] for i in range(n)]
        if n == 3:
            lines.append("f " + " ".join(str(i + 1) for i in ring))
        else:
            c = node_index[("c", fid)]
            for i in range(n):
                tri = (c, ring[i], ring[(i + 1) % n])
                lines.append("f " + " ".join(str(i + 1) for i in tri))
    return "\n".join(lines) + "\n"


# -- planar nets ----------------------------------------------------------------


@dataclass
class PlanarNet:
    surface: Surface
    root: FaceId
    placements: dict  # face -> (n, 2) chart coordinates in the common plane
    tree_edges: list  # (parent slot, child slot) SlotRef pairs (fold lines)
    cut_edges: list  # gluings not in the tree: (slot a, slot b)
    overlaps: list  # (face, face) pairs whose placed charts overlap

    @property
    def has_overlap(self) -> bool:
        return bool(self.overlaps)


def unfold_net(s: Surface, root: FaceId | None = None,
               tree_strategy: str = "bfs") -> PlanarNet:
    """Unfold the face-adjacency spanning tree into the plane: the root chart
    sits at the origin, each child placed by the edge-transition isometry."""
    if not s.is_connected():
        raise Disconnected("net unfolding needs a connected surface")
    if root is None:
        root = min(s.faces)
    adj = s.face_adjacency()
    iso_of = {root: None}
    placements = {root: face_chart(s, root)}
    tree_edges = []
    tree_slots = set()
    frontier = [root]
    from .geodesics import PlanarIsometry

    iso_of[root] = PlanarIsometry.identity()
    order = 0
    while frontier:
        if tree_strategy == "dfs":
            f = frontier.pop()
        else:
            f = frontier.pop(0)
        for own, other in sorted(adj[f], key=lambda p: p[0].index):
            if other.face in iso_of:
                continue
            # child chart -> parent chart -> plane
            iso_of[other.face] = iso_of[f].compose(transition(s, other))
            placements[other.face] = iso_of[other.face].apply(face_chart(s, other.face))
            tree_edges.append((own, other))
            tree_slots.add((own, other))
            tree_slots.add((other, own))
            frontier.append(other.face)
        order += 1
    cut_edges = []
    for gl in s.gluings:
        if (gl.a, gl.b) not in tree_slots:
            cut_edges.append((gl.a, gl.b))
    scale = min(float(f.edge_length) for f in s.faces.values())
    # snap shared edges to a grid first: GEOS overlays misbehave on edges
    # that coincide only up to floating-point noise
    polys = {
        f: shapely.set_precision(Polygon(placements[f]), 1e-9 * scale)
        for f in placements
    }
    faces = sorted(polys)
    overlaps = []
    for i, f in enumerate(faces):
        for gfid in faces[i + 1:]:
            inter = polys[f].intersection(polys[gfid])
            if inter.area > 1e-9 * scale * scale:
                overlaps.append((f, gfid))
    return PlanarNet(s, root, placements, tree_edges, cut_edges, overlaps)


def refold_check(net: PlanarNet) -> float:
    """Max deviation from identity when composing each tree placement with
    the inverse chain of transitions (round-trip consistency)."""
    s = net.surface
    worst = 0.0
    for own, other in net.tree_edges:
        a = net.placements[own.face]
        b = net.placements[other.face]
        iso = transition(s, own)
        na, nb = len(a), len(b)
        p, flipped = s.partner(own)
        # own edge endpoints must coincide with the partner edge endpoints
        a0, a1 = a[own.index], a[(own.index + 1) % na]
        b0, b1 = b[p.index], b[(p.index + 1) % nb]
        if flipped:
            d = max(np.linalg.norm(a0 - b0), np.linalg.norm(a1 - b1))
        else:
            d = max(np.linalg.norm(a0 - b1), np.linalg.norm(a1 - b0))
        worst = max(worst, float(d))
        del iso
    return worst


def export_svg(net: PlanarNet) -> str:
    """SVG 1.1 cut pattern: face outlines, fold edges (spanning tree) and cut
    edges in distinct stroke classes, viewBox fitted with a 5% margin."""
    pts = np.vstack(list(net.placements[f] for f in sorted(net.placements)))
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    margin = 0.05 * float(max(hi - lo))
    x, y = lo - margin
    w, h = (hi - lo) + 2 * margin
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{x:.6g} {y:.6g} {w:.6g} {h:.6g}">',
        "<style>.face{fill:none;stroke:#999;stroke-width:0.01}"
        ".fold{stroke:#00f;stroke-width:0.02;stroke-dasharray:0.05 0.05}"
        ".cut{stroke:#f00;stroke-width:0.02}</style>",
    ]
    for f in sorted(net.placements):
        coords = " ".join(f"{px:.6g},{py:.6g}" for px, py in net.placements[f])
        lines.append(f'<polygon class="face" points="{coords}"/>')

    def edge_line(slot: SlotRef, cls: str) -> str:
        chart = net.placements[slot.face]
        n = len(chart)
        (x1, y1), (x2, y2) = chart[slot.index], chart[(slot.index + 1) % n]
        return (f'<line class="{cls}" x1="{x1:.6g}" y1="{y1:.6g}" '
                f'x2="{x2:.6g}" y2="{y2:.6g}"/>')

    for own, _ in net.tree_edges:
        lines.append(edge_line(own, "fold"))
    for a, b in net.cut_edges:
        lines.append(edge_line(a, "cut"))
        lines.append(edge_line(b, "cut"))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def best_fit_plane_residual(m: EmbeddedMesh) -> float:
    """RMS distance of the nodes from their best-fit plane."""
    p = m.positions - m.positions.mean(axis=0)
    _, sv, _ = np.linalg.svd(p, full_matrices=False)
    return float(sv[-1] / math.sqrt(len(p)))


def radial_stats(m: EmbeddedMesh):
    """Mean and max distance of the surface-vertex nodes from the centroid."""
    vidx = [i for i, (kind, _) in enumerate(m.nodes) if kind == "v"]
    p = m.positions[vidx] - m.positions[vidx].mean(axis=0)
    r = np.linalg.norm(p, axis=1)
    return float(r.mean()), float(r.max())
