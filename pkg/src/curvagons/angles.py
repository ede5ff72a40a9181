"""Exact angle arithmetic in rational degrees.

All regular-polygon interior angles are rational in degrees, so every
curvature/topology quantity in the kernel is an exact ``Fraction``.  Floats
appear only at presentation boundaries (charts, embeddings, reports).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import SidesTooSmall

Angle = Fraction  # degrees

FULL_TURN = Fraction(360)
HALF_TURN = Fraction(180)


def interior_angle(sides: int) -> Angle:
    """Interior angle of a regular polygon, (n-2)*180/n degrees."""
    if sides < 3:
        raise SidesTooSmall(f"polygon needs >= 3 sides, got {sides}")
    return Fraction((sides - 2) * 180, sides)


def to_radians(angle: Angle) -> float:
    return math.radians(float(angle))


def format_angle(angle: Angle) -> str:
    """Render a rational number of degrees as e.g. ``-8 4/7°`` or ``60°``."""
    sign = "-" if angle < 0 else ""
    a = abs(angle)
    whole, rem = divmod(a.numerator, a.denominator)
    if rem == 0:
        return f"{sign}{whole}°"
    if whole == 0:
        return f"{sign}{rem}/{a.denominator}°"
    return f"{sign}{whole} {rem}/{a.denominator}°"


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, integer, or decimal text into an exact Fraction."""
    return Fraction(text)
