"""Combinatorial kernel: faces, directed edge slots, gluings, derived vertices.

A surface is a collection of regular polygon faces plus an involution on
their directed boundary slots.  Slot ``(f, i)`` runs from corner ``i`` to
corner ``(i+1) % n`` with corners numbered counterclockwise when the face is
viewed from its front side.

Gluing identification convention:

* ``flipped=False`` (orientation-compatible): head of one slot meets the
  tail of the other, so two front-side-up faces join seamlessly.
* ``flipped=True``: head meets head and tail meets tail; this reverses
  relative orientation and can create nonorientable surfaces.

Vertices, boundary loops, closedness and orientability are all derived and
cached; any mutation invalidates the caches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .errors import (
    AlreadyGlued,
    BadSlotIndex,
    LengthMismatch,
    NonPositiveLength,
    SelfSlot,
    SidesTooSmall,
    UnknownFace,
)

FaceId = int
Corner = tuple[FaceId, int]  # (face id, corner index)


@dataclass(frozen=True, order=True)
class SlotRef:
    face: FaceId
    index: int


@dataclass
class Face:
    id: FaceId
    sides: int
    edge_length: Fraction


@dataclass(frozen=True)
class Gluing:
    a: SlotRef
    b: SlotRef
    flipped: bool = False


@dataclass(frozen=True)
class Vertex:
    """A derived corner cycle: closed (interior) or an open path (boundary)."""

    corners: tuple[Corner, ...]
    kind: str  # "interior" | "boundary"

    @property
    def is_interior(self) -> bool:
        return self.kind == "interior"


@dataclass(frozen=True)
class BoundaryLoop:
    slots: tuple[SlotRef, ...]


@dataclass
class ValidationIssue:
    severity: str  # "error" | "warning"
    code: str
    message: str


class Surface:
    def __init__(self):
        self.faces: dict[FaceId, Face] = {}
        self.gluings: list[Gluing] = []
        self._partner: dict[SlotRef, tuple[SlotRef, bool]] = {}
        self._next_id = 0
        self._cache: dict = {}

    # -- basic structure ---------------------------------------------------

    def copy(self) -> "Surface":
        s = Surface()
        s.faces = {fid: Face(f.id, f.sides, f.edge_length) for fid, f in self.faces.items()}
        s.gluings = list(self.gluings)
        s._partner = dict(self._partner)
        s._next_id = self._next_id
        return s

    def add_face(self, sides: int, edge_length=Fraction(1)) -> FaceId:
        if sides < 3:
            raise SidesTooSmall(f"face needs >= 3 sides, got {sides}")
        edge_length = Fraction(edge_length)
        if edge_length <= 0:
            raise NonPositiveLength(f"edge_length must be > 0, got {edge_length}")
        fid = self._next_id
        self._next_id += 1
        self.faces[fid] = Face(fid, sides, edge_length)
        self._cache.clear()
        return fid

    def face(self, fid: FaceId) -> Face:
        try:
            return self.faces[fid]
        except KeyError:
            raise UnknownFace(f"no face {fid}") from None

    def check_slot(self, slot: SlotRef) -> SlotRef:
        f = self.face(slot.face)
        if not 0 <= slot.index < f.sides:
            raise BadSlotIndex(f"slot index {slot.index} out of range for {f.sides}-gon {slot.face}")
        return slot

    def slots(self) -> Iterable[SlotRef]:
        for f in self.faces.values():
            for i in range(f.sides):
                yield SlotRef(f.id, i)

    def glue(self, a: SlotRef, b: SlotRef, flipped: bool = False) -> None:
        self.check_slot(a)
        self.check_slot(b)
        if a == b:
            raise SelfSlot(f"cannot glue {a} to itself")
        if a in self._partner:
            raise AlreadyGlued(f"{a} already glued")
        if b in self._partner:
            raise AlreadyGlued(f"{b} already glued")
        if self.faces[a.face].edge_length != self.faces[b.face].edge_length:
            raise LengthMismatch(
                f"edge lengths differ: {self.faces[a.face].edge_length} vs {self.faces[b.face].edge_length}"
            )
        self.gluings.append(Gluing(a, b, flipped))
        self._partner[a] = (b, flipped)
        self._partner[b] = (a, flipped)
        self._cache.clear()

    def partner(self, slot: SlotRef) -> Optional[tuple[SlotRef, bool]]:
        return self._partner.get(slot)

    def is_glued(self, slot: SlotRef) -> bool:
        return slot in self._partner

    # -- corner walking ----------------------------------------------------

    def _incident_slots(self, corner: Corner) -> tuple[SlotRef, SlotRef]:
        """(outgoing, incoming) slots at a corner."""
        f, i = corner
        n = self.faces[f].sides
        return SlotRef(f, i), SlotRef(f, (i - 1) % n)

    def _cross(self, corner: Corner, slot: SlotRef) -> Optional[tuple[Corner, SlotRef]]:
        """Cross ``slot`` (incident to ``corner``) to the glued partner face.

        Returns (identified corner in the partner face, slot arrived through)
        or None if the slot is unglued.
        """
        hit = self._partner.get(slot)
        if hit is None:
            return None
        p, flipped = hit
        g, j = p.face, p.index
        n = self.faces[g].sides
        out, inc = self._incident_slots(corner)
        at_head = slot == inc  # corner is the head of the crossed slot
        if at_head != flipped:
            new = (g, j)  # lands on the partner's tail
        else:
            new = (g, (j + 1) % n)  # lands on the partner's head
        return new, p

    def _rotate(self, corner: Corner, slot: SlotRef):
        """Walk the corner fan, crossing ``slot`` first; yields corners."""
        cur = corner
        while True:
            hit = self._cross(cur, slot)
            if hit is None:
                return
            cur, arrived = hit
            yield cur
            out, inc = self._incident_slots(cur)
            slot = inc if arrived == out else out

    def vertices(self) -> list[Vertex]:
        if "vertices" in self._cache:
            return self._cache["vertices"]
        seen: set[Corner] = set()
        result: list[Vertex] = []
        for f in sorted(self.faces):
            for i in range(self.faces[f].sides):
                c = (f, i)
                if c in seen:
                    continue
                out, inc = self._incident_slots(c)
                forward: list[Corner] = []
                closed = False
                for x in self._rotate(c, inc):
                    if x == c:
                        closed = True
                        break
                    forward.append(x)
                if closed:
                    corners = (c, *forward)
                    kind = "interior"
                else:
                    backward = list(self._rotate(c, out))
                    corners = (*reversed(backward), c, *forward)
                    kind = "boundary"
                seen.update(corners)
                result.append(Vertex(tuple(corners), kind))
        self._cache["vertices"] = result
        return result

    def vertex_of_corner(self, corner: Corner) -> Vertex:
        return self._corner_map()[corner]

    def _corner_map(self) -> dict[Corner, Vertex]:
        if "corner_map" not in self._cache:
            self._cache["corner_map"] = {c: v for v in self.vertices() for c in v.corners}
        return self._cache["corner_map"]

    # -- derived counts and flags -------------------------------------------

    def unglued_slots(self) -> list[SlotRef]:
        return [s for s in self.slots() if s not in self._partner]

    def counts(self) -> tuple[int, int, int]:
        v = len(self.vertices())
        e = len(self.gluings) + len(self.unglued_slots())
        return v, e, len(self.faces)

    def euler_characteristic(self) -> int:
        v, e, f = self.counts()
        return v - e + f

    def is_closed(self) -> bool:
        return not self.unglued_slots()

    def is_orientable(self) -> bool:
        if "orientable" in self._cache:
            return self._cache["orientable"]
        sign: dict[FaceId, int] = {}
        ok = True
        for root in sorted(self.faces):
            if root in sign:
                continue
            sign[root] = 1
            stack = [root]
            while stack and ok:
                f = stack.pop()
                for i in range(self.faces[f].sides):
                    hit = self._partner.get(SlotRef(f, i))
                    if hit is None:
                        continue
                    p, flipped = hit
                    want = -sign[f] if flipped else sign[f]
                    if p.face not in sign:
                        sign[p.face] = want
                        stack.append(p.face)
                    elif sign[p.face] != want:
                        ok = False
                        break
        self._cache["orientable"] = ok
        self._cache["orientation"] = sign if ok else None
        return ok

    def face_orientations(self) -> dict[FaceId, int]:
        """Consistent +-1 orientation per face (requires orientable)."""
        from .errors import NotOrientable

        if not self.is_orientable():
            raise NotOrientable("surface is nonorientable")
        return self._cache["orientation"]

    def boundary_loops(self) -> list[BoundaryLoop]:
        if "loops" in self._cache:
            return self._cache["loops"]
        unglued = set(self.unglued_slots())
        loops: list[BoundaryLoop] = []
        remaining = sorted(unglued, key=lambda s: (s.face, s.index))
        visited: set[SlotRef] = set()
        for start in remaining:
            if start in visited:
                continue
            loop = [start]
            visited.add(start)
            cur = start
            while True:
                nxt = self._next_boundary_slot(cur)
                if nxt == start:
                    break
                loop.append(nxt)
                visited.add(nxt)
                cur = nxt
            loops.append(BoundaryLoop(tuple(loop)))
        self._cache["loops"] = loops
        return loops

    def _next_boundary_slot(self, slot: SlotRef) -> SlotRef:
        """The unglued slot reached by rotating around ``slot``'s head corner."""
        f, i = slot.face, slot.index
        n = self.faces[f].sides
        cur = (f, (i + 1) % n)  # head corner
        attempt = SlotRef(f, (i + 1) % n)  # its outgoing slot
        while True:
            hit = self._cross(cur, attempt)
            if hit is None:
                return attempt
            cur, arrived = hit
            out, inc = self._incident_slots(cur)
            attempt = inc if arrived == out else out

    # -- adjacency and validation -------------------------------------------

    def face_adjacency(self) -> dict[FaceId, list[tuple[SlotRef, SlotRef]]]:
        """For each face, the (own slot, partner slot) pairs of its gluings."""
        adj: dict[FaceId, list[tuple[SlotRef, SlotRef]]] = {f: [] for f in self.faces}
        for g in self.gluings:
            adj[g.a.face].append((g.a, g.b))
            adj[g.b.face].append((g.b, g.a))
        return adj

    def connected_components(self) -> list[set[FaceId]]:
        adj = self.face_adjacency()
        seen: set[FaceId] = set()
        comps = []
        for root in sorted(self.faces):
            if root in seen:
                continue
            comp = {root}
            stack = [root]
            seen.add(root)
            while stack:
                f = stack.pop()
                for _, p in adj[f]:
                    if p.face not in seen:
                        seen.add(p.face)
                        comp.add(p.face)
                        stack.append(p.face)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def validate(self) -> list[ValidationIssue]:
        issues: list[ValidationIssue] = []
        pair_count: dict[tuple[FaceId, FaceId], int] = {}
        for g in self.gluings:
            if g.a.face == g.b.face:
                n = self.faces[g.a.face].sides
                gap = (g.a.index - g.b.index) % n
                if gap in (1, n - 1):
                    issues.append(
                        ValidationIssue(
                            "error",
                            "degenerate_vertex",
                            f"gluing {g.a}~{g.b} pinches a corner of face {g.a.face}",
                        )
                    )
            key = tuple(sorted((g.a.face, g.b.face)))
            pair_count[key] = pair_count.get(key, 0) + 1
        for (fa, fb), n in pair_count.items():
            if n > 1 and fa != fb:
                issues.append(
                    ValidationIssue(
                        "warning",
                        "multi_edge",
                        f"faces {fa} and {fb} share {n} edges",
                    )
                )
        return issues


def new_surface() -> Surface:
    return Surface()
