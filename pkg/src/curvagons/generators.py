"""Canonical constructions: Platonic and Archimedean catalogs, prisms,
antiprisms, the elongated square gyrobicupola, football tiling disks, the
9-fold torus, and vertex-configuration enumeration.

Everything is purely combinatorial; most solids are operator expressions on
a tetrahedron seed (icosahedron = snub tetrahedron, dodecahedron = its dual).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .angles import Angle, interior_angle
from .errors import SidesTooSmall, TooFewSectors, UnknownSolid
from .poly import Poly, ambo, bevel, dual, expand, poly_to_surface, snub, truncate
from .surface import SlotRef, Surface

PLATONIC_NAMES = ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron")

ARCHIMEDEAN_NAMES = (
    "truncated-tetrahedron",
    "cuboctahedron",
    "truncated-cube",
    "truncated-octahedron",
    "rhombicuboctahedron",
    "truncated-cuboctahedron",
    "snub-cube",
    "icosidodecahedron",
    "truncated-dodecahedron",
    "truncated-icosahedron",
    "rhombicosidodecahedron",
    "truncated-icosidodecahedron",
    "snub-dodecahedron",
)


def _tetra_poly() -> Poly:
    return Poly([(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)])


def _cube_poly() -> Poly:
    return Poly(
        [
            (0, 3, 2, 1),
            (4, 5, 6, 7),
            (0, 1, 5, 4),
            (1, 2, 6, 5),
            (2, 3, 7, 6),
            (3, 0, 4, 7),
        ]
    )


def platonic_poly(name: str) -> Poly:
    if name == "tetrahedron":
        return _tetra_poly()
    if name == "cube":
        return _cube_poly()
    if name == "octahedron":
        return ambo(_tetra_poly())
    if name == "icosahedron":
        return snub(_tetra_poly())
    if name == "dodecahedron":
        return dual(snub(_tetra_poly()))
    raise UnknownSolid(f"unknown Platonic solid {name!r}")


def platonic(name: str, edge_length=Fraction(1)) -> Surface:
    return poly_to_surface(platonic_poly(name), edge_length)


_ARCHIMEDEAN_RECIPES = {
    "truncated-tetrahedron": lambda: truncate(_tetra_poly()),
    "cuboctahedron": lambda: ambo(_cube_poly()),
    "truncated-cube": lambda: truncate(_cube_poly()),
    "truncated-octahedron": lambda: truncate(platonic_poly("octahedron")),
    "rhombicuboctahedron": lambda: expand(_cube_poly()),
    "truncated-cuboctahedron": lambda: bevel(_cube_poly()),
    "snub-cube": lambda: snub(_cube_poly()),
    "icosidodecahedron": lambda: ambo(platonic_poly("dodecahedron")),
    "truncated-dodecahedron": lambda: truncate(platonic_poly("dodecahedron")),
    "truncated-icosahedron": lambda: truncate(platonic_poly("icosahedron")),
    "rhombicosidodecahedron": lambda: expand(platonic_poly("dodecahedron")),
    "truncated-icosidodecahedron": lambda: bevel(platonic_poly("dodecahedron")),
    "snub-dodecahedron": lambda: snub(platonic_poly("dodecahedron")),
}


def archimedean(name: str, edge_length=Fraction(1)) -> Surface:
    try:
        recipe = _ARCHIMEDEAN_RECIPES[name]
    except KeyError:
        raise UnknownSolid(f"unknown Archimedean solid {name!r}") from None
    return poly_to_surface(recipe(), edge_length)


def prism(n: int, edge_length=Fraction(1)) -> Surface:
    if n < 3:
        raise SidesTooSmall(f"prism needs n >= 3, got {n}")
    t = [("t", i) for i in range(n)]
    b = [("b", i) for i in range(n)]
    faces = [tuple(t), tuple(b[0:1] + b[:0:-1])]
    for i in range(n):
        j = (i + 1) % n
        faces.append((b[i], b[j], t[j], t[i]))
    return poly_to_surface(Poly(faces), edge_length)


def antiprism(n: int, edge_length=Fraction(1)) -> Surface:
    if n < 3:
        raise SidesTooSmall(f"antiprism needs n >= 3, got {n}")
    t = [("t", i) for i in range(n)]
    b = [("b", i) for i in range(n)]
    faces = [tuple(t), tuple(b[0:1] + b[:0:-1])]
    for i in range(n):
        j = (i + 1) % n
        faces.append((b[i], b[j], t[i]))
        faces.append((t[i], b[j], t[j]))
    return poly_to_surface(Poly(faces), edge_length)


def elongated_square_gyrobicupola(edge_length=Fraction(1)) -> Surface:
    """8 triangles + 18 squares, every vertex (3,4,4,4); the classic
    'fourteenth Archimedean' that is only locally vertex-regular."""
    s = [("s", i) for i in range(4)]  # top square
    r = [("r", i) for i in range(8)]  # upper rim
    q = [("q", i) for i in range(8)]  # lower rim
    p = [("p", i) for i in range(4)]  # bottom square
    faces = [tuple(s), (p[3], p[2], p[1], p[0])]
    for i in range(4):
        i1 = (i + 1) % 4
        faces.append((s[i1], s[i], r[2 * i], r[(2 * i + 1) % 8]))
        faces.append((s[i1], r[(2 * i + 1) % 8], r[(2 * i + 2) % 8]))
    for k in range(8):
        k1 = (k + 1) % 8
        faces.append((r[k1], r[k], q[k], q[k1]))
    for i in range(4):
        i1 = (i + 1) % 4
        faces.append((p[i], p[i1], q[(2 * i + 2) % 8], q[(2 * i + 1) % 8]))
        faces.append((p[i], q[(2 * i + 1) % 8], q[(2 * i) % 8]))
    return poly_to_surface(Poly(faces), edge_length)


def solid(name: str, edge_length=Fraction(1)) -> Surface:
    """Construct any cataloged solid by kebab-case name, including
    ``prism-N`` / ``antiprism-N`` and ``elongated-square-gyrobicupola``."""
    if name in PLATONIC_NAMES:
        return platonic(name, edge_length)
    if name in ARCHIMEDEAN_NAMES:
        return archimedean(name, edge_length)
    if name == "elongated-square-gyrobicupola":
        return elongated_square_gyrobicupola(edge_length)
    for prefix, fn in (("prism-", prism), ("antiprism-", antiprism)):
        if name.startswith(prefix):
            try:
                n = int(name[len(prefix):])
            except ValueError:
                raise UnknownSolid(f"bad side count in {name!r}") from None
            return fn(n, edge_length)
    raise UnknownSolid(f"unknown solid {name!r}")


# -- combinatorial operators exposed on surfaces -----------------------------


def _surface_op(op):
    def run(s: Surface) -> Surface:
        from .poly import surface_to_poly

        edge = next(iter(s.faces.values())).edge_length if s.faces else Fraction(1)
        return poly_to_surface(op(surface_to_poly(s)), edge)

    run.__name__ = op.__name__
    return run


truncate_surface = _surface_op(truncate)
ambo_surface = _surface_op(ambo)
expand_surface = _surface_op(expand)
bevel_surface = _surface_op(bevel)
snub_surface = _surface_op(snub)
dual_surface = _surface_op(dual)


# -- football tiling disks ---------------------------------------------------


class _Triangulation:
    """A layered disk in the {3,c} triangulation: triangles stored as
    counterclockwise vertex triples, each directed edge in at most one
    triangle.  ``close`` completes a boundary vertex to degree c by fanning
    in new triangles; the football tilings are its truncations."""

    def __init__(self, c: int):
        self.c = c
        self.faces: list[tuple[int, int, int]] = []
        self._dir: dict[tuple[int, int], int] = {}
        self.layer: dict[int, int] = {}
        self._nv = 0
        v0 = self._new_vertex(0)
        ring = [self._new_vertex(1) for _ in range(c)]
        for i in range(c):
            self._add(v0, ring[i], ring[(i + 1) % c])

    def _new_vertex(self, layer: int) -> int:
        v = self._nv
        self._nv += 1
        self.layer[v] = layer
        return v

    def _add(self, a: int, b: int, c: int) -> None:
        fi = len(self.faces)
        self.faces.append((a, b, c))
        for u, v in ((a, b), (b, c), (c, a)):
            assert (u, v) not in self._dir
            self._dir[(u, v)] = fi

    def _third(self, u: int, v: int) -> int:
        face = self.faces[self._dir[(u, v)]]
        return next(w for w in face if w not in (u, v))

    def neighbor_chain(self, v: int) -> list[int]:
        """Neighbors of v in rotation order; open chain when v is boundary."""
        outgoing = {u for (x, u) in self._dir if x == v}
        start = next((u for u in outgoing if (u, v) not in self._dir), None)
        if start is None:  # interior
            start = next(iter(outgoing))
        chain = [start]
        while (v, chain[-1]) in self._dir:
            nxt = self._third(v, chain[-1])
            if nxt == start:
                return chain  # closed fan
            chain.append(nxt)
        return chain

    def is_interior(self, v: int) -> bool:
        chain = self.neighbor_chain(v)
        return (v, chain[-1]) in self._dir

    def close(self, v: int) -> None:
        """Fan new triangles around v until its degree reaches c."""
        if self.is_interior(v):
            return
        chain = self.neighbor_chain(v)
        k = self.c - (len(chain) - 1)  # triangles to add
        assert k >= 1, f"vertex {v} over-saturated"
        ring = [chain[-1]]
        ring += [self._new_vertex(self.layer[v] + 1) for _ in range(k - 1)]
        ring.append(chain[0])
        for j in range(k):
            self._add(v, ring[j], ring[j + 1])

    def grow(self, layers: int) -> None:
        for lay in range(layers):
            for v in [u for u, l in self.layer.items() if l == lay]:
                self.close(v)


def _truncated_tiling_patch(c: int, rings: int, edge_length) -> Surface:
    """Faces of the (c,6,6) tiling within ``rings`` face-steps of a central
    c-gon: the truncation of a {3,c} triangulation disk."""
    tri = _Triangulation(c)
    tri.grow(rings + 1)
    cycles: list[list] = []
    # c-gon per interior vertex of the triangulation; the central one first
    for v in sorted(tri.layer):
        if tri.is_interior(v):
            cycles.append([(v, u) for u in tri.neighbor_chain(v)])
    for a, b, cc in tri.faces:  # hexagon per triangle
        cycles.append([(a, b), (b, a), (b, cc), (cc, b), (cc, a), (a, cc)])
    s = Surface()
    slot_of: dict[tuple, SlotRef] = {}
    for cyc in cycles:
        fid = s.add_face(len(cyc), edge_length)
        for i, corner in enumerate(cyc):
            slot_of[(corner, cyc[(i + 1) % len(cyc)])] = SlotRef(fid, i)
    for (u, v), a in sorted(slot_of.items(), key=lambda kv: kv[1]):
        b = slot_of.get((v, u))
        if b is not None and a < b:
            s.glue(a, b)
    # keep faces within `rings` steps of the central c-gon
    depth = {0: 0}
    frontier = [0]
    adj = s.face_adjacency()
    while frontier:
        nxt = []
        for f in frontier:
            for _, p in adj[f]:
                if p.face not in depth:
                    depth[p.face] = depth[f] + 1
                    nxt.append(p.face)
        frontier = nxt
    from .curvature import subsurface

    return subsurface(s, {f for f, d in depth.items() if d <= rings})


def football_disk(center: int, rings: int, edge_length=Fraction(1)) -> Surface:
    """A simply connected patch of the (center,6,6) football tiling.

    center=6 is the flat hexagonal tiling, center=7 the hyperbolic football
    (every interior vertex in excess), center=5 follows the truncated
    icosahedron and closes up once ``rings`` reaches its face diameter.
    """
    if center not in (5, 6, 7):
        raise ValueError(f"center must be 5, 6 or 7, got {center}")
    if rings < 0:
        raise ValueError("rings must be >= 0")
    if center == 5:
        return _football5_patch(rings, edge_length)
    return _truncated_tiling_patch(center, rings, edge_length)


def football5_closing_rings() -> int:
    """Ring count at which football_disk(5, rings) closes into the
    truncated icosahedron."""
    return max(_football5_layers().values())


def _football5_layers() -> dict[int, int]:
    full = poly_to_surface(truncate(snub(_tetra_poly())))
    root = next(fid for fid in sorted(full.faces) if full.faces[fid].sides == 5)
    depth = {root: 0}
    frontier = [root]
    adj = full.face_adjacency()
    while frontier:
        nxt = []
        for f in frontier:
            for _, p in adj[f]:
                if p.face not in depth:
                    depth[p.face] = depth[f] + 1
                    nxt.append(p.face)
        frontier = nxt
    return depth


def _football5_patch(rings: int, edge_length) -> Surface:
    full = poly_to_surface(truncate(snub(_tetra_poly())), edge_length)
    depth = _football5_layers()
    keep = {f for f, d in depth.items() if d <= rings}
    from .curvature import subsurface

    return subsurface(full, keep)


# -- 9-fold torus -------------------------------------------------------------

# One sector of the torus: an annular strip between two seam circles of 9
# vertices.  Five faces span the strip; each carries l (and r = sides-2-l)
# seam segments on the left (right) seam.  A segment is either a plain seam
# edge or the 1-edge chord of a pocket face tucked against the seam and
# covering sides-1 seam edges; each seam hosts one triangle pocket here.
# Consecutive sectors are identified with a rotational shift.  The table was
# found by exhaustive search over this family subject to: every
# heptagon-touching vertex strictly in excess, every remaining
# triangle-touching vertex strictly in defect, no flat-band violations.
TORUS_SECTOR_SPAN = ((4, 1), (4, 1), (4, 1), (7, 1), (7, 4))  # (sides, l)
TORUS_SECTOR_LEFT_SEGMENTS = (1, 1, 1, 1, 1, 1, 3, 1)  # 1 = edge, n = pocket
TORUS_SECTOR_RIGHT_SEGMENTS = (1, 1, 1, 1, 3, 1, 1, 1)
TORUS_SECTOR_SHIFT = 6


def torus_9fold(sectors: int = 9, edge_length=Fraction(1)) -> Surface:
    if sectors < 3:
        raise TooFewSectors(f"torus needs >= 3 sectors, got {sectors}")
    faces = _torus_sector_faces(sectors)
    return poly_to_surface(Poly(faces), edge_length)


def _torus_sector_faces(sectors: int) -> list[list]:
    lpos = [0]
    for seg in TORUS_SECTOR_LEFT_SEGMENTS:
        lpos.append(lpos[-1] + (1 if seg == 1 else seg - 1))
    rpos = [0]
    for seg in TORUS_SECTOR_RIGHT_SEGMENTS:
        rpos.append(rpos[-1] + (1 if seg == 1 else seg - 1))
    allfaces: list[list] = []
    for k in range(sectors):
        def L(t):
            return (k, t % 9)

        def R(t):
            return ((k + 1) % sectors, (t + TORUS_SECTOR_SHIFT) % 9)

        # pockets: seam edges in the seam's traversal direction, then chord
        for j, seg in enumerate(TORUS_SECTOR_LEFT_SEGMENTS):
            if seg != 1:
                allfaces.append([L(t) for t in range(lpos[j], lpos[j + 1] + 1)])
        for j, seg in enumerate(TORUS_SECTOR_RIGHT_SEGMENTS):
            if seg != 1:
                allfaces.append([R(t) for t in range(rpos[j + 1], rpos[j] - 1, -1)])
        li = 0
        ri = 0
        for n, l in TORUS_SECTOR_SPAN:
            r = n - 2 - l
            cyc = [L(lpos[j]) for j in range(li, li + l + 1)]
            cyc += [R(rpos[j]) for j in range(ri + r, ri - 1, -1)]
            assert len(cyc) == n
            allfaces.append(cyc)
            li += l
            ri += r
    return allfaces


# -- vertex configuration enumeration ----------------------------------------


@dataclass(frozen=True)
class VertexConfig:
    sides: tuple[int, ...]
    angle_sum: Angle

    @property
    def defect(self) -> Angle:
        return Fraction(360) - self.angle_sum

    @property
    def cls(self) -> str:
        if self.angle_sum < 360:
            return "convex"
        if self.angle_sum == 360:
            return "flat"
        return "hyperbolic"


def enumerate_vertex_configs(
    cls: str, max_sides: int, max_count: int, uniform: bool = False
) -> list[VertexConfig]:
    """All side-count multisets (k in [3, max_count], sides in [3, max_sides])
    whose angle sum falls in the given class, canonically sorted."""
    if cls not in ("convex", "flat", "hyperbolic"):
        raise ValueError(f"class must be convex|flat|hyperbolic, got {cls!r}")
    if max_sides < 3 or max_count < 3:
        raise ValueError("max_sides and max_count must be >= 3")
    out: list[VertexConfig] = []
    limit = Fraction(360)

    def recurse(prefix: list[int], total: Angle, lo: int):
        k = len(prefix)
        if k >= 3:
            if (
                (cls == "convex" and total < limit)
                or (cls == "flat" and total == limit)
                or (cls == "hyperbolic" and total > limit)
            ):
                out.append(VertexConfig(tuple(prefix), total))
        if k == max_count:
            return
        for n in range(lo, max_sides + 1):
            if uniform and prefix and n != prefix[0]:
                continue
            t = total + interior_angle(n)
            # angle sums only grow along a branch and with n, so convex/flat
            # branches die as soon as the partial sum passes 360
            if cls != "hyperbolic" and t > limit:
                break
            recurse(prefix + [n], t, n)

    recurse([], Fraction(0), 3)
    if uniform:
        out = [c for c in out if len(set(c.sides)) == 1]
    return sorted(out, key=lambda c: (len(c.sides), c.sides))
