"""Exact geometry of the plane over a prime field: distances, bisectors, rigid
motions, bisector-energy statistics and the spectra of the associated graphs."""

from .errors import FFGeomError
from .field import FieldElement, PrimeField
from .plane import Circle, Line, Point
from .pointsets import PointSet, Prng, construct, from_points, parse_pointset, serialize_pointset

__all__ = [
    "Circle",
    "FFGeomError",
    "FieldElement",
    "Line",
    "Point",
    "PointSet",
    "PrimeField",
    "Prng",
    "construct",
    "from_points",
    "parse_pointset",
    "serialize_pointset",
]
__version__ = "0.1.0"
