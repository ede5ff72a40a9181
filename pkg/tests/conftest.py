import pytest

from curvagons.surface import SlotRef, Surface


def triangle_fan(count: int, close: bool = True) -> Surface:
    """`count` unit triangles glued side by side around one shared point;
    closed into a cone when `close` is set."""
    s = Surface()
    fids = [s.add_face(3) for _ in range(count)]
    for i in range(count - 1):
        s.glue(SlotRef(fids[i], 1), SlotRef(fids[i + 1], 0))
    if close:
        s.glue(SlotRef(fids[-1], 1), SlotRef(fids[0], 0))
    return s


def square_ring(count: int = 6) -> Surface:
    """Squares glued end to end into an annulus."""
    s = Surface()
    fids = [s.add_face(4) for _ in range(count)]
    for i in range(count):
        s.glue(SlotRef(fids[i], 1), SlotRef(fids[(i + 1) % count], 3))
    return s


@pytest.fixture
def fan6():
    return triangle_fan(6)


@pytest.fixture
def fan7():
    return triangle_fan(7)
