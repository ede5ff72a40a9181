"""Error types shared across the package.

Every error carries a stable machine-readable ``code`` so the CLI and the
session service can surface it without string matching.
"""


class CurvagonError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message=""):
        super().__init__(message or self.__doc__)


class SidesTooSmall(CurvagonError):
    """A polygon needs at least 3 sides."""

    code = "sides_too_small"


class NonPositiveLength(CurvagonError):
    """Edge lengths must be positive."""

    code = "non_positive_length"


class AlreadyGlued(CurvagonError):
    """Slot already participates in a gluing."""

    code = "already_glued"


class LengthMismatch(CurvagonError):
    """Glued slots must have equal edge lengths."""

    code = "length_mismatch"


class SelfSlot(CurvagonError):
    """A slot cannot be glued to itself."""

    code = "self_slot"


class UnknownFace(CurvagonError):
    """Face id not present in the surface."""

    code = "unknown_face"


class BadSlotIndex(CurvagonError):
    """Slot index out of range for the face."""

    code = "bad_slot_index"


class ParseError(CurvagonError):
    """Spec file text is malformed."""

    code = "parse_error"

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}" + (f", col {column}" if column is not None else "") + f": {message}"
        super().__init__(message)


class DanglingReference(ParseError):
    """Gluing names an undeclared face."""

    code = "dangling_reference"


class DuplicateGluing(ParseError):
    """The same slot is glued twice in a spec file."""

    code = "duplicate_gluing"


class BoundaryVertex(CurvagonError):
    """Operation requires an interior vertex."""

    code = "boundary_vertex"


class InteriorVertex(CurvagonError):
    """Operation requires a boundary vertex."""

    code = "interior_vertex"


class NotClosed(CurvagonError):
    """Operation requires a closed surface."""

    code = "not_closed"


class NotOrientable(CurvagonError):
    """Operation requires an orientable surface."""

    code = "not_orientable"


class OddChi(CurvagonError):
    """Closed orientable surface reported odd Euler characteristic (kernel bug)."""

    code = "odd_chi"


class NonPositiveDefect(CurvagonError):
    """Vertex-count formula needs a positive defect."""

    code = "non_positive_defect"


class NotIntegral(CurvagonError):
    """720 degrees is not an integer multiple of the given defect."""

    code = "not_integral"


class EmptyRegion(CurvagonError):
    """Region contains no faces."""

    code = "empty_region"


class DisconnectedRegion(CurvagonError):
    """Region is not a connected disk-like subsurface."""

    code = "disconnected_region"


class UnknownSolid(CurvagonError):
    """Name not in the solid catalog."""

    code = "unknown_solid"


class TooFewSectors(CurvagonError):
    """Torus construction needs at least 3 sectors."""

    code = "too_few_sectors"


class UngluedSlot(CurvagonError):
    """Transition requires a glued slot."""

    code = "unglued_slot"


class HitVertex(CurvagonError):
    """Geodesic passes through a cone point; continuation undefined."""

    code = "hit_vertex"


class SegmentEscapesStrip(CurvagonError):
    """Unfolded segment leaves the unfolded strip."""

    code = "segment_escapes_strip"


class NotADisk(CurvagonError):
    """Triangle sides do not bound a disk region."""

    code = "not_a_disk"


class SidesIntersect(CurvagonError):
    """Triangle sides intersect away from their shared corners."""

    code = "sides_intersect"


class NoGeodesicFound(CurvagonError):
    """Strip search exhausted without finding a geodesic."""

    code = "no_geodesic_found"


class Disconnected(CurvagonError):
    """Operation requires a connected surface."""

    code = "disconnected"


class CoincidentNodes(CurvagonError):
    """Two mesh nodes coincide; spring gradient undefined."""

    code = "coincident_nodes"


class PointOutsideFace(CurvagonError):
    """Surface point lies outside its face chart."""

    code = "point_outside_face"


class UnknownSession(CurvagonError):
    """Session id not found (or expired)."""

    code = "unknown_session"


class ConflictingMutation(CurvagonError):
    """Serialized-writer rule violated for a session."""

    code = "conflicting_mutation"
