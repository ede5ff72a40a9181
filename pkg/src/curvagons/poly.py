"""Oriented combinatorial polyhedra and corner-cutting operators.

A :class:`Poly` stores faces as cyclic vertex-id tuples, consistently
oriented: every directed edge appears in exactly one face and its reverse in
exactly one other.  The truncation-family operators (truncate, ambo, expand,
bevel, snub) and the dual are pure combinatorial rewrites on this form;
conversion to and from the slot/gluing :class:`~curvagons.surface.Surface`
representation lives here too.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotClosed, NotOrientable
from .surface import SlotRef, Surface


class Poly:
    def __init__(self, faces):
        self.faces = [tuple(f) for f in faces]
        self._dir: dict[tuple, int] = {}
        for fi, face in enumerate(self.faces):
            n = len(face)
            for i in range(n):
                e = (face[i], face[(i + 1) % n])
                if e in self._dir:
                    raise ValueError(f"directed edge {e} appears twice")
                self._dir[e] = fi
        for u, v in self._dir:
            if (v, u) not in self._dir:
                raise ValueError(f"directed edge {(v, u)} missing: polyhedron not closed")

    @property
    def vertices(self):
        return sorted({v for f in self.faces for v in f}, key=repr)

    def edge_count(self) -> int:
        return len(self._dir) // 2

    def face_with_edge(self, u, v) -> int:
        return self._dir[(u, v)]

    def next_neighbor(self, v, u):
        """Rotation at v: the neighbor after u, read off the face containing u->v."""
        face = self.faces[self._dir[(u, v)]]
        i = face.index(v)
        return face[(i + 1) % len(face)]

    def rotation(self, v):
        """Neighbors of v in rotation order."""
        first = next(u for (u, w) in self._dir if w == v)
        order = [first]
        while True:
            nxt = self.next_neighbor(v, order[-1])
            if nxt == first:
                return order
            order.append(nxt)


def truncate(p: Poly) -> Poly:
    """Cut every corner: degree-d vertices become d-gons, n-gons become 2n-gons.

    New vertices are directed edges (v, u): the cut point near v on edge {v,u}.
    """
    faces = []
    for face in p.faces:
        n = len(face)
        cycle = []
        for i in range(n):
            u, v = face[i], face[(i + 1) % n]
            cycle.append((u, v))
            cycle.append((v, u))
        faces.append(cycle)
    for v in _all_vertices(p):
        faces.append([(v, u) for u in reversed(p.rotation(v))])
    return Poly(faces)


def ambo(p: Poly) -> Poly:
    """Full truncation to edge midpoints; original vertices vanish."""
    faces = []
    for face in p.faces:
        n = len(face)
        faces.append([frozenset((face[i], face[(i + 1) % n])) for i in range(n)])
    for v in _all_vertices(p):
        faces.append([frozenset((v, u)) for u in reversed(p.rotation(v))])
    return Poly(faces)


def expand(p: Poly) -> Poly:
    """Pull faces apart: squares on edges, d-gons on vertices, faces kept."""
    faces = []
    for fi, face in enumerate(p.faces):
        faces.append([(fi, v) for v in face])
    for v in _all_vertices(p):
        around = [p.face_with_edge(u, v) for u in p.rotation(v)]
        faces.append([(fi, v) for fi in reversed(around)])
    for u, v in p._dir:
        if repr(u) < repr(v):
            f1 = p.face_with_edge(u, v)
            f2 = p.face_with_edge(v, u)
            faces.append([(f1, v), (f1, u), (f2, u), (f2, v)])
    return Poly(faces)


def snub(p: Poly) -> Poly:
    """Like expand, but each edge square is split into two triangles
    (consistent chirality), giving the snub of the seed."""
    faces = []
    for fi, face in enumerate(p.faces):
        faces.append([(fi, v) for v in face])
    for v in _all_vertices(p):
        around = [p.face_with_edge(u, v) for u in p.rotation(v)]
        faces.append([(fi, v) for fi in reversed(around)])
    for u, v in p._dir:
        if repr(u) < repr(v):
            f1 = p.face_with_edge(u, v)
            f2 = p.face_with_edge(v, u)
            faces.append([(f1, v), (f1, u), (f2, u)])
            faces.append([(f1, v), (f2, u), (f2, v)])
    return Poly(faces)


def bevel(p: Poly) -> Poly:
    """Truncated ambo: 4-gons on edges, 2n-gons on faces, 2d-gons on vertices."""
    return truncate(ambo(p))


def dual(p: Poly) -> Poly:
    """Faces and vertices exchange roles."""
    faces = []
    for v in _all_vertices(p):
        around = [p.face_with_edge(u, v) for u in p.rotation(v)]
        faces.append(around)
    return Poly(faces)


def _all_vertices(p: Poly):
    seen = set()
    out = []
    for face in p.faces:
        for v in face:
            if v not in seen:
                seen.add(v)
                out.append(v)
    return out


# -- conversions -----------------------------------------------------------


def poly_to_surface(p: Poly, edge_length=Fraction(1)) -> Surface:
    s = Surface()
    fids = [s.add_face(len(face), edge_length) for face in p.faces]
    slot_of = {}
    for fi, face in enumerate(p.faces):
        n = len(face)
        for i in range(n):
            slot_of[(face[i], face[(i + 1) % n])] = SlotRef(fids[fi], i)
    done = set()
    for (u, v), a in sorted(slot_of.items(), key=lambda kv: (kv[1].face, kv[1].index)):
        if (u, v) in done:
            continue
        b = slot_of[(v, u)]
        s.glue(a, b, flipped=False)
        done.add((u, v))
        done.add((v, u))
    return s


def surface_to_poly(s: Surface) -> Poly:
    """Closed orientable surface -> oriented face-cycle form.

    Vertex ids are indices into ``s.vertices()``; faces flipped as needed for
    a globally consistent orientation.
    """
    if not s.is_closed():
        raise NotClosed("conversion requires a closed surface")
    orient = s.face_orientations()  # raises NotOrientable
    corner_vertex = {}
    for vi, v in enumerate(s.vertices()):
        for c in v.corners:
            corner_vertex[c] = vi
    faces = []
    for fid in sorted(s.faces):
        n = s.faces[fid].sides
        cycle = [corner_vertex[(fid, i)] for i in range(n)]
        if orient[fid] < 0:
            cycle = [cycle[0]] + cycle[:0:-1]
        faces.append(cycle)
    return Poly(faces)
