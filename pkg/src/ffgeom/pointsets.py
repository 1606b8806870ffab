"""Point sets in F_p^2: constructions, a portable PRNG, and the text file format.

File format::

    q 5
    # comment
    0 0
    2 0
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import ConstructionError, FormatError
from .field import PrimeField
from .plane import Circle, Point, circle_points

MASK64 = (1 << 64) - 1


class Prng:
    """SplitMix64. Identical seeds give identical streams on every platform."""

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        """Uniform integer in [0, m), rejecting draws past the last full multiple of m."""
        if m <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % m
        while True:
            z = self.next_u64()
            if z < limit:
                return z % m


@dataclass(frozen=True)
class PointSet:
    field: PrimeField
    points: tuple[Point, ...] = field(default=())

    def __post_init__(self) -> None:
        p = self.field.p
        pts = tuple(sorted(Point(int(x), int(y)) for x, y in self.points))
        for x, y in pts:
            if not (0 <= x < p and 0 <= y < p):
                raise ValueError(f"point {(x, y)} not canonical mod {p}")
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points")
        object.__setattr__(self, "points", pts)

    @property
    def q(self) -> int:
        return self.field.p

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x: object) -> bool:
        return x in set(self.points)


def from_points(F: PrimeField, pts: Iterable[tuple[int, int]]) -> PointSet:
    """Reduce coordinates mod p and drop duplicates."""
    return PointSet(F, tuple({Point(x % F.p, y % F.p) for x, y in pts}))


KINDS = ("full_plane", "random", "parallel_lines", "isotropic_lines", "circle", "single_line")


def construct(F: PrimeField, kind: str, **params) -> PointSet:
    """Build one of the named point sets.

    ``random`` takes ``n`` and ``seed``; ``parallel_lines`` and ``isotropic_lines``
    take ``k``; ``circle`` takes ``center`` and ``radius``.
    """
    p = F.p
    if kind == "full_plane":
        pts = [(x, y) for x in range(p) for y in range(p)]
    elif kind == "single_line":
        pts = [(x, 0) for x in range(p)]
    elif kind == "parallel_lines":
        k = int(params["k"])
        if not 1 <= k <= p:
            raise ConstructionError(f"parallel_lines needs 1 <= k <= q, got k={k}")
        pts = [(x, y) for x in range(k) for y in range(p)]
    elif kind == "isotropic_lines":
        k = int(params["k"])
        i = F.sqrt_minus_one
        if i is None:
            raise ConstructionError(f"no isotropic lines over F_{p} (q = 3 mod 4)")
        if not 1 <= k <= p - 1:
            raise ConstructionError(f"isotropic_lines needs 1 <= k <= q-1, got k={k}")
        pts = [(t, (i * t + j) % p) for j in range(k) for t in range(p)]
    elif kind == "circle":
        cx, cy = params.get("center", (0, 0))
        pts = circle_points(F, Circle(Point(cx % p, cy % p), int(params.get("radius", 1)) % p))
    elif kind == "random":
        n, seed = int(params["n"]), int(params.get("seed", 0))
        if not 0 <= n <= p * p:
            raise ConstructionError(f"random needs 0 <= n <= q^2, got n={n}")
        rng = Prng(seed)
        chosen: dict[int, None] = {}
        while len(chosen) < n:
            chosen.setdefault(rng.below(p * p))
        pts = [divmod(idx, p) for idx in chosen]
    else:
        raise ConstructionError(f"unknown construction {kind!r}; expected one of {KINDS}")
    return PointSet(F, tuple(Point(x, y) for x, y in pts))


def parse_pointset(text: str) -> PointSet:
    header = None
    pts: list[Point] = []
    seen: set[Point] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2 or fields[0] != "q":
                raise FormatError(f"line {lineno}: expected 'q <modulus>' header")
            try:
                header = PrimeField(int(fields[1]))
            except ValueError as exc:
                raise FormatError(f"line {lineno}: bad modulus: {exc}") from None
            continue
        if len(fields) != 2:
            raise FormatError(f"line {lineno}: expected '<x> <y>'")
        try:
            x, y = int(fields[0]), int(fields[1])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer coordinate") from None
        if not (0 <= x < header.p and 0 <= y < header.p):
            raise FormatError(f"line {lineno}: coordinate out of range [0, {header.p})")
        pt = Point(x, y)
        if pt in seen:
            raise FormatError(f"line {lineno}: duplicate point {x} {y}")
        seen.add(pt)
        pts.append(pt)
    if header is None:
        raise FormatError("missing 'q <modulus>' header")
    return PointSet(header, tuple(pts))


def serialize_pointset(P: PointSet) -> str:
    body = "".join(f"{x} {y}\n" for x, y in P.points)
    return f"q {P.q}\n{body}"
