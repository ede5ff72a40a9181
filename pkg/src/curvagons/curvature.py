"""Exact-rational curvature and topology invariants.

Defects, turnings and the Descartes check are computed in rational degrees,
so every identity here holds bit-exactly with zero tolerance.  Sign
convention: positive = defect (sphere-like), negative = excess (hyperbolic).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .angles import Angle, FULL_TURN, HALF_TURN, interior_angle
from .errors import (
    BoundaryVertex,
    DisconnectedRegion,
    EmptyRegion,
    InteriorVertex,
    NonPositiveDefect,
    NotClosed,
    NotIntegral,
    NotOrientable,
    OddChi,
)
from .surface import BoundaryLoop, FaceId, Surface, Vertex


def angle_sum(s: Surface, v: Vertex) -> Angle:
    return sum((interior_angle(s.faces[f].sides) for f, _ in v.corners), Fraction(0))


def vertex_defect(s: Surface, v: Vertex) -> Angle:
    if not v.is_interior:
        raise BoundaryVertex("defect is defined for interior vertices; use boundary_turning")
    return FULL_TURN - angle_sum(s, v)


def boundary_turning(s: Surface, v: Vertex) -> Angle:
    if v.is_interior:
        raise InteriorVertex("turning is defined for boundary vertices; use vertex_defect")
    return HALF_TURN - angle_sum(s, v)


def total_defect(s: Surface) -> Angle:
    return sum((vertex_defect(s, v) for v in s.vertices() if v.is_interior), Fraction(0))


def total_turning(s: Surface, loop: BoundaryLoop) -> Angle:
    """Sum of turning angles over the boundary vertices visited by a loop."""
    seen = set()
    total = Fraction(0)
    for slot in loop.slots:
        f, i = slot.face, slot.index
        n = s.faces[f].sides
        v = s.vertex_of_corner((f, (i + 1) % n))  # head corner of each slot
        if id(v) in seen:
            continue
        seen.add(id(v))
        total += boundary_turning(s, v)
    return total


def euler_characteristic(s: Surface) -> int:
    return s.euler_characteristic()


def genus(s: Surface) -> int:
    if not s.is_closed():
        raise NotClosed("genus requires a closed surface")
    if not s.is_orientable():
        raise NotOrientable("genus requires an orientable surface")
    chi = s.euler_characteristic()
    if chi % 2 != 0:
        raise OddChi(f"closed orientable surface with odd chi={chi}")
    return (2 - chi) // 2


def check_descartes(s: Surface) -> tuple[bool, Angle, Angle]:
    if not s.is_closed():
        raise NotClosed("Descartes' theorem applies to closed surfaces")
    lhs = total_defect(s)
    rhs = FULL_TURN * s.euler_characteristic()
    return lhs == rhs, lhs, rhs


def vertex_count_from_defect(defect: Angle) -> int:
    defect = Fraction(defect)
    if defect <= 0:
        raise NonPositiveDefect(f"defect must be positive, got {defect}")
    count = Fraction(720) / defect
    if count.denominator != 1:
        raise NotIntegral(f"720° is not an integer multiple of {defect}°")
    return int(count)


def subsurface(s: Surface, region: Iterable[FaceId]) -> Surface:
    """The induced subsurface: region faces plus gluings internal to them.

    Face ids are preserved.
    """
    region = set(region)
    sub = Surface()
    sub._next_id = s._next_id
    for fid in sorted(region):
        f = s.face(fid)
        sub.faces[fid] = type(f)(f.id, f.sides, f.edge_length)
    for g in s.gluings:
        if g.a.face in region and g.b.face in region:
            sub.glue(g.a, g.b, g.flipped)
    return sub


@dataclass
class RegionReport:
    enclosed: Angle
    turning: Angle
    chi_region: int
    holds: bool


def region_gauss_bonnet(s: Surface, region: Iterable[FaceId]) -> RegionReport:
    """Gauss-Bonnet for a connected region: enclosed = 360°·chi - turning.

    Enclosed curvature sums the defects of vertices whose corners all lie in
    the region; the boundary contribution is the total turning of the
    subsurface's boundary loops.
    """
    region = set(region)
    if not region:
        raise EmptyRegion("region has no faces")
    sub = subsurface(s, region)
    if not sub.is_connected():
        raise DisconnectedRegion("region is not edge-connected")
    _reject_split_boundary_vertices(s, sub, region)
    enclosed = Fraction(0)
    for v in s.vertices():
        if all(f in region for f, _ in v.corners):
            if v.is_interior:
                enclosed += vertex_defect(s, v)
            # full boundary vertices of the parent surface contribute turning,
            # which the subsurface's own loops account for
    turning = sum((total_turning(sub, loop) for loop in sub.boundary_loops()), Fraction(0))
    chi = sub.euler_characteristic()
    holds = enclosed == FULL_TURN * chi - turning
    return RegionReport(enclosed, turning, chi, holds)


def _reject_split_boundary_vertices(s: Surface, sub: Surface, region: set[FaceId]) -> None:
    """A parent vertex touched by the region in two separate corner fans makes
    the region boundary self-touching; reject rather than guess a turning."""
    by_parent: dict[int, set[int]] = {}
    parent_of = {c: i for i, v in enumerate(s.vertices()) for c in v.corners}
    for j, sv in enumerate(sub.vertices()):
        pid = parent_of[sv.corners[0]]
        by_parent.setdefault(pid, set()).add(j)
    for pid, subverts in by_parent.items():
        if len(subverts) > 1:
            raise DisconnectedRegion(
                "region touches a vertex through multiple corner fans"
            )


@dataclass
class VertexCurvatureReport:
    index: int
    kind: str
    config: tuple[int, ...]  # sorted side counts of the corner faces
    angle_sum: Angle
    defect: Optional[Angle]  # interior only
    turning: Optional[Angle]  # boundary only


@dataclass
class TopologyReport:
    v: int
    e: int
    f: int
    chi: int
    closed: bool
    orientable: bool
    genus: Optional[int]
    total_defect: Angle
    descartes_holds: Optional[bool]  # None when not closed


def vertex_reports(s: Surface) -> list[VertexCurvatureReport]:
    out = []
    for i, v in enumerate(s.vertices()):
        asum = angle_sum(s, v)
        config = tuple(sorted(s.faces[f].sides for f, _ in v.corners))
        if v.is_interior:
            out.append(VertexCurvatureReport(i, "interior", config, asum, FULL_TURN - asum, None))
        else:
            out.append(VertexCurvatureReport(i, "boundary", config, asum, None, HALF_TURN - asum))
    return out


def topology_report(s: Surface) -> TopologyReport:
    v, e, f = s.counts()
    closed = s.is_closed()
    orientable = s.is_orientable()
    g = genus(s) if closed and orientable else None
    td = total_defect(s)
    descartes = None
    if closed:
        descartes = td == FULL_TURN * (v - e + f)
    return TopologyReport(v, e, f, v - e + f, closed, orientable, g, td, descartes)
