from fractions import Fraction

import pytest

from conftest import square_ring, triangle_fan
from curvagons import generators
from curvagons.angles import format_angle, interior_angle
from curvagons.curvature import (
    boundary_turning,
    check_descartes,
    genus,
    region_gauss_bonnet,
    subsurface,
    topology_report,
    total_defect,
    total_turning,
    vertex_count_from_defect,
    vertex_defect,
)
from curvagons.errors import (
    BoundaryVertex,
    DisconnectedRegion,
    EmptyRegion,
    InteriorVertex,
    NonPositiveDefect,
    NotClosed,
    NotIntegral,
    SidesTooSmall,
)
from curvagons.surface import SlotRef, Surface


def test_interior_angle_values():
    assert interior_angle(3) == 60
    assert interior_angle(4) == 90
    assert interior_angle(7) == Fraction(900, 7)
    with pytest.raises(SidesTooSmall):
        interior_angle(2)


def test_interior_angle_monotone_bounded():
    prev = Fraction(0)
    for n in range(3, 100):
        a = interior_angle(n)
        assert prev < a < 180
        prev = a


def test_format_angle():
    assert format_angle(Fraction(60)) == "60°"
    assert format_angle(Fraction(60, 7)) == "8 4/7°"
    assert format_angle(-Fraction(60, 7)) == "-8 4/7°"
    assert format_angle(Fraction(4, 7)) == "4/7°"


def test_vertex_defect_fans():
    s5 = triangle_fan(5)
    v = next(v for v in s5.vertices() if v.is_interior)
    assert vertex_defect(s5, v) == 60

    s7 = triangle_fan(7)
    v = next(v for v in s7.vertices() if v.is_interior)
    assert vertex_defect(s7, v) == -60

    boundary = next(v for v in s7.vertices() if not v.is_interior)
    with pytest.raises(BoundaryVertex):
        vertex_defect(s7, boundary)


def test_hyperbolic_football_vertex():
    s = generators.football_disk(7, 1)
    interior = [v for v in s.vertices() if v.is_interior]
    assert len(interior) == 7
    for v in interior:
        assert vertex_defect(s, v) == -Fraction(60, 7)


def test_boundary_turning():
    s = Surface()
    s.add_face(3)
    for v in s.vertices():
        assert boundary_turning(s, v) == 120
    sq = Surface()
    sq.add_face(4)
    assert all(boundary_turning(sq, v) == 90 for v in sq.vertices())
    hexes = Surface()
    a = hexes.add_face(6)
    b = hexes.add_face(6)
    hexes.glue(SlotRef(a, 0), SlotRef(b, 0))
    two_corner = [v for v in hexes.vertices() if len(v.corners) == 2]
    assert len(two_corner) == 2
    assert all(boundary_turning(hexes, v) == -60 for v in two_corner)
    interior_err = triangle_fan(6)
    v = next(v for v in interior_err.vertices() if v.is_interior)
    with pytest.raises(InteriorVertex):
        boundary_turning(interior_err, v)


def test_total_defect_solids():
    assert total_defect(generators.solid("tetrahedron")) == 720
    assert total_defect(generators.solid("truncated-icosidodecahedron")) == 720
    assert total_defect(generators.torus_9fold()) == 0


def test_genus_and_chi():
    t = generators.torus_9fold()
    assert t.euler_characteristic() == 0
    assert genus(t) == 1
    ti = generators.solid("truncated-icosahedron")
    assert ti.euler_characteristic() == 2
    assert genus(ti) == 0
    disk = Surface()
    disk.add_face(6)
    assert disk.euler_characteristic() == 1
    with pytest.raises(NotClosed):
        genus(disk)


def test_check_descartes():
    holds, lhs, rhs = check_descartes(generators.solid("cube"))
    assert holds and lhs == rhs == 720
    holds, lhs, rhs = check_descartes(generators.torus_9fold())
    assert holds and lhs == rhs == 0
    open_surface = Surface()
    open_surface.add_face(4)
    with pytest.raises(NotClosed):
        check_descartes(open_surface)


def test_total_turning():
    tri = Surface()
    tri.add_face(3)
    assert total_turning(tri, tri.boundary_loops()[0]) == 360
    hexa = Surface()
    hexa.add_face(6)
    assert total_turning(hexa, hexa.boundary_loops()[0]) == 360
    ring = square_ring(6)
    for loop in ring.boundary_loops():
        assert total_turning(ring, loop) == 0


def test_vertex_count_from_defect():
    assert vertex_count_from_defect(Fraction(180)) == 4
    assert vertex_count_from_defect(Fraction(6)) == 120
    assert vertex_count_from_defect(Fraction(12)) == 60
    with pytest.raises(NonPositiveDefect):
        vertex_count_from_defect(Fraction(0))
    with pytest.raises(NotIntegral):
        vertex_count_from_defect(Fraction(7))


def test_region_gauss_bonnet_patch():
    s = generators.football_disk(7, 1)
    rep = region_gauss_bonnet(s, set(s.faces))
    assert rep.enclosed == -60  # 7 * -8 4/7
    assert rep.holds


def test_region_single_face():
    s = generators.football_disk(7, 1)
    fid = min(s.faces)
    rep = region_gauss_bonnet(s, {fid})
    assert rep.enclosed == 0
    assert rep.turning == 360
    assert rep.chi_region == 1
    assert rep.holds


def test_region_full_closed_surface():
    s = generators.solid("octahedron")
    rep = region_gauss_bonnet(s, set(s.faces))
    assert rep.turning == 0
    assert rep.enclosed == 720
    assert rep.holds


def test_region_errors():
    s = generators.solid("cube")
    with pytest.raises(EmptyRegion):
        region_gauss_bonnet(s, set())
    opposite = {0, 5} if 5 in s.faces else set(list(s.faces)[:2])
    adj = s.face_adjacency()
    f0 = min(s.faces)
    non_neighbor = next(f for f in sorted(s.faces)
                        if f != f0 and f not in {o.face for _, o in adj[f0]})
    with pytest.raises(DisconnectedRegion):
        region_gauss_bonnet(s, {f0, non_neighbor})


def test_region_random_disks():
    import random

    rng = random.Random(0)
    for name in ("cube", "icosahedron", "truncated-octahedron"):
        s = generators.solid(name)
        adj = s.face_adjacency()
        for _ in range(33):
            region = {rng.choice(sorted(s.faces))}
            for _ in range(rng.randrange(1, 5)):
                frontier = [o.face for f in region for _, o in adj[f]
                            if o.face not in region]
                if frontier:
                    region.add(rng.choice(sorted(frontier)))
            try:
                rep = region_gauss_bonnet(s, region)
            except DisconnectedRegion:
                continue
            assert rep.holds


def test_subsurface_preserves_ids():
    s = generators.football_disk(7, 1)
    keep = sorted(s.faces)[:3]
    sub = subsurface(s, keep)
    assert sorted(sub.faces) == keep


def test_topology_report():
    rep = topology_report(generators.torus_9fold())
    assert (rep.v, rep.e, rep.f) == (81, 144, 63)
    assert rep.chi == 0 and rep.genus == 1
    assert rep.closed and rep.orientable
    assert rep.total_defect == 0 and rep.descartes_holds
