"""Workbench for surfaces glued from flexible regular-polygon tiles.

Exact rational curvature and topology (angle defects, Euler characteristic,
Descartes/Gauss-Bonnet), solid and tiling generators, geodesic tracing and
triangles, spring-relaxation 3D embedding with OBJ/SVG/net export, and a
CLI plus session service.
"""

from .angles import Angle, format_angle, interior_angle
from .curvature import (
    angle_sum,
    boundary_turning,
    check_descartes,
    genus,
    region_gauss_bonnet,
    topology_report,
    total_defect,
    total_turning,
    vertex_defect,
    vertex_reports,
)
from .errors import CurvagonError
from .generators import (
    ARCHIMEDEAN_NAMES,
    PLATONIC_NAMES,
    antiprism,
    archimedean,
    elongated_square_gyrobicupola,
    enumerate_vertex_configs,
    football_disk,
    platonic,
    prism,
    solid,
    torus_9fold,
)
from .specfile import parse_spec, write_spec
from .surface import SlotRef, Surface, new_surface

__version__ = "0.1.0"

__all__ = [
    "Angle",
    "ARCHIMEDEAN_NAMES",
    "CurvagonError",
    "PLATONIC_NAMES",
    "SlotRef",
    "Surface",
    "angle_sum",
    "antiprism",
    "archimedean",
    "boundary_turning",
    "check_descartes",
    "elongated_square_gyrobicupola",
    "enumerate_vertex_configs",
    "football_disk",
    "format_angle",
    "genus",
    "interior_angle",
    "new_surface",
    "parse_spec",
    "platonic",
    "prism",
    "region_gauss_bonnet",
    "solid",
    "topology_report",
    "torus_9fold",
    "total_defect",
    "total_turning",
    "vertex_defect",
    "vertex_reports",
    "write_spec",
    "__version__",
]
