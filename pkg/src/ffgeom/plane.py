"""Points, lines and circles of the plane F_p^2 under the norm x1^2 + x2^2.

Points are bare ``(x1, x2)`` tuples of canonical residues; every function takes
the field explicitly.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import DegeneratePairError
from .field import PrimeField


class Point(NamedTuple):
    x1: int
    x2: int


class Line(NamedTuple):
    """Locus a*x + b*y + c = 0, stored with the first nonzero of (a, b) equal to 1."""

    a: int
    b: int
    c: int


class Circle(NamedTuple):
    center: Point
    radius: int  # the norm value r, not a length


def point(F: PrimeField, x1: int, x2: int) -> Point:
    return Point(x1 % F.p, x2 % F.p)


def make_line(F: PrimeField, a: int, b: int, c: int) -> Line:
    p = F.p
    a, b, c = a % p, b % p, c % p
    if a == 0 and b == 0:
        raise ValueError("line needs (a, b) != (0, 0)")
    s = pow(a if a else b, -1, p)
    return Line(a * s % p, b * s % p, c * s % p)


def sub(F: PrimeField, x: Point, y: Point) -> Point:
    return Point((x[0] - y[0]) % F.p, (x[1] - y[1]) % F.p)


def add(F: PrimeField, x: Point, y: Point) -> Point:
    return Point((x[0] + y[0]) % F.p, (x[1] + y[1]) % F.p)


def norm(F: PrimeField, x: Point) -> int:
    return (x[0] * x[0] + x[1] * x[1]) % F.p


def dot(F: PrimeField, x: Point, y: Point) -> int:
    return (x[0] * y[0] + x[1] * y[1]) % F.p


def dist(F: PrimeField, x: Point, y: Point) -> int:
    """Norm of x - y."""
    u, v = x[0] - y[0], x[1] - y[1]
    return (u * u + v * v) % F.p


def bisector(F: PrimeField, a: Point, b: Point) -> Line:
    """Perpendicular bisector {c : ||c - a|| = ||c - b||} of distinct points.

    Expanding the defining equation gives 2 c.(b - a) + ||a|| - ||b|| = 0.
    """
    if a == b:
        raise DegeneratePairError(f"bisector of {a} with itself is undefined")
    return make_line(
        F,
        2 * (b[0] - a[0]),
        2 * (b[1] - a[1]),
        a[0] * a[0] + a[1] * a[1] - b[0] * b[0] - b[1] * b[1],
    )


def on_line(F: PrimeField, l: Line, x: Point) -> bool:
    return (l.a * x[0] + l.b * x[1] + l.c) % F.p == 0


def direction(F: PrimeField, l: Line) -> Point:
    return Point(-l.b % F.p, l.a)


def is_isotropic(F: PrimeField, l: Line) -> bool:
    # direction (-b, a) has norm a^2 + b^2
    return (l.a * l.a + l.b * l.b) % F.p == 0


def base_point(F: PrimeField, l: Line) -> Point:
    """A point of ``l``: on the y-axis when b != 0, else on the x-axis."""
    p = F.p
    if l.b:
        return Point(0, -l.c * pow(l.b, -1, p) % p)
    return Point(-l.c * pow(l.a, -1, p) % p, 0)


def line_points(F: PrimeField, l: Line) -> list[Point]:
    """The q points of ``l`` ordered by parameter t in base + t * direction."""
    p = F.p
    x0, y0 = base_point(F, l)
    dx, dy = direction(F, l)
    return [Point((x0 + t * dx) % p, (y0 + t * dy) % p) for t in range(p)]


def line_through(F: PrimeField, u: Point, v: Point) -> Line:
    if u == v:
        raise DegeneratePairError("a line needs two distinct points")
    dx, dy = v[0] - u[0], v[1] - u[1]
    # normal (dy, -dx)
    return make_line(F, dy, -dx, -(dy * u[0] - dx * u[1]))


def all_points(F: PrimeField) -> list[Point]:
    return [Point(x, y) for x in range(F.p) for y in range(F.p)]


def all_lines(F: PrimeField) -> list[Line]:
    """All q^2 + q affine lines in canonical form, sorted."""
    p = F.p
    lines = [Line(1, b, c) for b in range(p) for c in range(p)]
    lines += [Line(0, 1, c) for c in range(p)]
    return sorted(lines)


def circle_points(F: PrimeField, C: Circle) -> set[Point]:
    p = F.p
    u1, u2 = C.center
    r = C.radius % p
    # for each x-offset solve dy^2 = r - dx^2
    out = set()
    for dx in range(p):
        rest = (r - dx * dx) % p
        s = F.sqrt(rest)
        if s is None:
            continue
        for dy in {s, (-s) % p}:
            out.add(Point((u1 + dx) % p, (u2 + dy) % p))
    return out


def line_circle_intersection(F: PrimeField, l: Line, C: Circle) -> set[Point]:
    r = C.radius % F.p
    return {x for x in line_points(F, l) if dist(F, x, C.center) == r}


def lines_through(u: Point, F: PrimeField) -> list[Line]:
    """The q + 1 lines through ``u``, canonical and sorted."""
    p = F.p
    dirs = [Point(1, m) for m in range(p)] + [Point(0, 1)]
    return sorted(line_through(F, u, add(F, u, d)) for d in dirs)
