from fractions import Fraction

import pytest

from curvagons import generators
from curvagons.curvature import check_descartes, total_defect, vertex_defect
from curvagons.errors import SidesTooSmall, TooFewSectors, UnknownSolid
from curvagons.generators import (
    ARCHIMEDEAN_NAMES,
    PLATONIC_NAMES,
    enumerate_vertex_configs,
    football_disk,
    football5_closing_rings,
    solid,
    torus_9fold,
)


def vertex_configs(s):
    return [tuple(sorted(s.faces[f].sides for f, _ in v.corners))
            for v in s.vertices()]


def test_platonic_catalog():
    expected = {
        "tetrahedron": ((4, 6, 4), (3, 3, 3)),
        "cube": ((8, 12, 6), (4, 4, 4)),
        "octahedron": ((6, 12, 8), (3, 3, 3, 3)),
        "dodecahedron": ((20, 30, 12), (5, 5, 5)),
        "icosahedron": ((12, 30, 20), (3, 3, 3, 3, 3)),
    }
    assert set(PLATONIC_NAMES) == set(expected)
    for name, (counts, config) in expected.items():
        s = solid(name)
        assert s.counts() == counts
        assert set(vertex_configs(s)) == {config}
        assert s.is_closed() and s.is_orientable()
        assert s.euler_characteristic() == 2
        assert check_descartes(s)[0]


def test_icosahedron_defects():
    s = solid("icosahedron")
    assert all(vertex_defect(s, v) == 60 for v in s.vertices())


def test_tetrahedron_defects():
    s = solid("tetrahedron")
    vs = s.vertices()
    assert len(vs) == 4
    assert all(vertex_defect(s, v) == 180 for v in vs)


ARCHIMEDEAN_CONFIGS = {
    "truncated-tetrahedron": (3, 6, 6),
    "cuboctahedron": (3, 4, 3, 4),
    "truncated-cube": (3, 8, 8),
    "truncated-octahedron": (4, 6, 6),
    "rhombicuboctahedron": (3, 4, 4, 4),
    "truncated-cuboctahedron": (4, 6, 8),
    "snub-cube": (3, 3, 3, 3, 4),
    "icosidodecahedron": (3, 5, 3, 5),
    "truncated-dodecahedron": (3, 10, 10),
    "truncated-icosahedron": (5, 6, 6),
    "rhombicosidodecahedron": (3, 4, 5, 4),
    "truncated-icosidodecahedron": (4, 6, 10),
    "snub-dodecahedron": (3, 3, 3, 3, 5),
}


def test_archimedean_catalog():
    assert set(ARCHIMEDEAN_NAMES) == set(ARCHIMEDEAN_CONFIGS)
    for name, config in ARCHIMEDEAN_CONFIGS.items():
        s = solid(name)
        assert set(vertex_configs(s)) == {tuple(sorted(config))}, name
        assert s.is_closed() and s.is_orientable()
        assert s.euler_characteristic() == 2
        assert check_descartes(s)[0]


def test_truncated_icosahedron_counts():
    s = solid("truncated-icosahedron")
    assert s.counts() == (60, 90, 32)
    assert all(vertex_defect(s, v) == 12 for v in s.vertices())


def test_truncated_icosidodecahedron_vertices():
    s = solid("truncated-icosidodecahedron")
    assert s.counts()[0] == 120
    assert all(vertex_defect(s, v) == 6 for v in s.vertices())


def test_snub_cube_vertices():
    s = solid("snub-cube")
    assert s.counts()[0] == 24


def test_prisms_and_antiprisms():
    for n in range(3, 13):
        p = solid(f"prism-{n}")
        assert p.counts() == (2 * n, 3 * n, n + 2)
        assert set(vertex_configs(p)) == {tuple(sorted((4, 4, n)))}
        assert check_descartes(p)[0]
        a = solid(f"antiprism-{n}")
        assert a.counts() == (2 * n, 4 * n, 2 * n + 2)
        assert set(vertex_configs(a)) == {tuple(sorted((3, 3, 3, n)))}
        assert check_descartes(a)[0]


def test_hexagonal_prism_counts():
    assert solid("prism-6").counts() == (12, 18, 8)


def test_square_antiprism_defects():
    s = solid("antiprism-4")
    assert s.counts()[0] == 8
    assert all(vertex_defect(s, v) == 90 for v in s.vertices())


def test_gyrobicupola():
    s = solid("elongated-square-gyrobicupola")
    sizes = sorted(f.sides for f in s.faces.values())
    assert sizes == [3] * 8 + [4] * 18
    assert s.counts()[0] == 24
    assert set(vertex_configs(s)) == {(3, 4, 4, 4)}
    assert check_descartes(s)[0]


def test_unknown_solid():
    with pytest.raises(UnknownSolid):
        solid("hyperbolic-donut")
    with pytest.raises(SidesTooSmall):
        solid("prism-2")


def test_torus_9fold():
    t = torus_9fold()
    assert t.counts() == (81, 144, 63)
    assert t.is_closed() and t.is_orientable()
    assert t.euler_characteristic() == 0
    assert total_defect(t) == 0
    sizes = sorted(f.sides for f in t.faces.values())
    assert sizes.count(3) == 18 and sizes.count(4) == 27 and sizes.count(7) == 18


def test_torus_rim_signs():
    t = torus_9fold()
    for v in t.vertices():
        sides = [t.faces[f].sides for f, _ in v.corners]
        d = vertex_defect(t, v)
        if 7 in sides:
            assert d < 0  # inner rim: excess
        elif 3 in sides:
            assert d > 0  # outer rim: defect


def test_torus_sector_scaling():
    for sectors in (3, 5, 12):
        t = torus_9fold(sectors)
        v, e, f = t.counts()
        assert (v, e, f) == (9 * sectors, 16 * sectors, 7 * sectors)
        assert t.euler_characteristic() == 0
        assert total_defect(t) == 0
    with pytest.raises(TooFewSectors):
        torus_9fold(2)


def test_football_disk_7():
    s = football_disk(7, 1)
    sizes = sorted(f.sides for f in s.faces.values())
    assert sizes == [6] * 7 + [7]
    interior = [v for v in s.vertices() if v.is_interior]
    assert len(interior) == 7
    for v in interior:
        assert vertex_defect(s, v) == -Fraction(60, 7)


def test_football_disk_7_growth():
    prev = 0
    for rings in (1, 2, 3):
        s = football_disk(7, rings)
        interior = [v for v in s.vertices() if v.is_interior]
        configs = {tuple(sorted(s.faces[f].sides for f, _ in v.corners))
                   for v in interior}
        assert configs <= {(6, 6, 7), (6, 6, 6)}
        hyp = [v for v in interior
               if vertex_defect(s, v) == -Fraction(60, 7)]
        flat = [v for v in interior if vertex_defect(s, v) == 0]
        assert len(hyp) + len(flat) == len(interior)
        assert len(hyp) > prev
        prev = len(hyp)


def test_football_disk_6_flat():
    for rings in (1, 2, 3):
        s = football_disk(6, rings)
        for v in s.vertices():
            if v.is_interior:
                assert vertex_defect(s, v) == 0


def test_football_disk_5_closes():
    rings = football5_closing_rings()
    s = football_disk(5, rings)
    assert s.counts() == (60, 90, 32)
    assert s.is_closed()
    assert s.euler_characteristic() == 2
    assert all(vertex_defect(s, v) == 12 for v in s.vertices())


def test_football_disk_5_partial():
    s = football_disk(5, 1)
    assert not s.is_closed()
    for v in s.vertices():
        if v.is_interior:
            assert vertex_defect(s, v) in (Fraction(12), Fraction(0))


def test_enumerate_flat_42():
    configs = enumerate_vertex_configs("flat", 42, 6)
    assert len(configs) == 17
    sides = {c.sides for c in configs}
    assert (3, 7, 42) in sides
    assert (6, 6, 6) in sides
    # determinism
    assert configs == enumerate_vertex_configs("flat", 42, 6)


def test_enumerate_flat_brute_force_oracle():
    import itertools

    found = set()
    for k in range(3, 7):
        for combo in itertools.combinations_with_replacement(range(3, 13), k):
            if sum(Fraction((n - 2) * 180, n) for n in combo) == 360:
                found.add(combo)
    assert found == {c.sides for c in enumerate_vertex_configs("flat", 12, 6)}


def test_enumerate_uniform_convex():
    configs = enumerate_vertex_configs("convex", 42, 6, uniform=True)
    assert {c.sides for c in configs} == {
        (3, 3, 3), (3, 3, 3, 3), (3, 3, 3, 3, 3), (4, 4, 4), (5, 5, 5)}


def test_enumerate_hyperbolic_uniform():
    configs = enumerate_vertex_configs("hyperbolic", 7, 3, uniform=True)
    sides = {c.sides for c in configs}
    assert (7, 7, 7) in sides
    assert (6, 6, 6) not in sides
