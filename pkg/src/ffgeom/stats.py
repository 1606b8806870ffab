"""Counting statistics of a point set: bisector weights and energies, distance
classes, isosceles triangles and pinned distances.

All counts are over *ordered* tuples. The distance class of 0 includes the
diagonal pairs (x, x).
"""

from __future__ import annotations

import math
import statistics
from collections import Counter, defaultdict
from fractions import Fraction

from .errors import InvalidDistanceError
from .plane import Line, Point, bisector, dist
from .pointsets import PointSet

WeightedLineMultiset = Counter  # Line -> number of ordered pairs with that bisector


def bisector_multiset(P: PointSet) -> Counter:
    F = P.field
    pts = P.points
    w: Counter = Counter()
    for x in pts:
        for y in pts:
            if x != y and dist(F, x, y):
                w[bisector(F, x, y)] += 1
    return w


def distinct_bisector_count(P: PointSet) -> int:
    return len(bisector_multiset(P))


def bisector_energy(P: PointSet, weights: Counter | None = None) -> int:
    """|Q(P)| as the sum of squared bisector weights.

    Two pairs sharing a bisector, one of them at nonzero distance, force the
    line to be non-isotropic and hence the other distance to be nonzero too, so
    this equals the quadruple count.
    """
    if weights is None:
        weights = bisector_multiset(P)
    return sum(v * v for v in weights.values())


def distance_classes(P: PointSet) -> dict[int, int]:
    """|Pi_d| for every d in F_p (zero entries included)."""
    F = P.field
    counts = [0] * F.p
    pts = P.points
    for x in pts:
        for y in pts:
            counts[dist(F, x, y)] += 1
    return dict(enumerate(counts))


def distance_energy(classes: dict[int, int]) -> int:
    return sum(v * v for v in classes.values())


def _pairs_by_bisector(P: PointSet) -> dict[Line, list[tuple[Point, Point]]]:
    F = P.field
    groups: dict[Line, list[tuple[Point, Point]]] = defaultdict(list)
    for x in P.points:
        for z in P.points:
            if x != z:
                groups[bisector(F, x, z)].append((x, z))
    return groups


def q_prime_counts(P: PointSet) -> dict[int, int]:
    """|Q'_d| for every d != 0.

    Q'_d holds (x, y, z, w) with x != z, y != w, B(x, z) = B(y, w) and
    ||x - y|| = ||z - w|| = d.
    """
    F = P.field
    out = dict.fromkeys(range(1, F.p), 0)
    for group in _pairs_by_bisector(P).values():
        for x, z in group:
            for y, w in group:
                d = dist(F, x, y)
                if d and d == dist(F, z, w):
                    out[d] += 1
    return out


def q_prime_d(P: PointSet, d: int) -> int:
    d %= P.field.p
    if d == 0:
        raise InvalidDistanceError("Q'_d is defined for d != 0 only")
    return q_prime_counts(P)[d]


def q_prime(P: PointSet) -> int:
    return sum(q_prime_counts(P).values())


def q_double_prime(P: PointSet) -> int:
    """Quadruples of Q(P) whose four cross distances x-y, x-w, z-y, z-w all vanish."""
    F = P.field
    pts = P.points
    zero_nbrs = {x: {y for y in pts if y != x and dist(F, x, y) == 0} for x in pts}
    total = 0
    for x in pts:
        if not zero_nbrs[x]:
            continue
        for z in pts:
            if x == z or dist(F, x, z) == 0:
                continue
            common = zero_nbrs[x] & zero_nbrs[z]
            if len(common) < 2:
                continue
            l = bisector(F, x, z)
            total += sum(1 for y in common for w in common if y != w and bisector(F, y, w) == l)
    return total


def nonzero_distance_pairs(P: PointSet) -> int:
    """#{(x, z) in P^2 : ||x - z|| != 0}."""
    return len(P) ** 2 - distance_classes(P)[0]


def isosceles_count(P: PointSet) -> int:
    """Ordered triples (x, y, z) with ||x - z|| = ||y - z|| and ||x - y|| != 0."""
    F = P.field
    pts = P.points
    total = 0
    for z in pts:
        rings: dict[int, list[Point]] = defaultdict(list)
        for x in pts:
            rings[dist(F, x, z)].append(x)
        for ring in rings.values():
            total += sum(1 for x in ring for y in ring if dist(F, x, y))
    return total


def pinned_distance_counts(P: PointSet) -> dict[Point, int]:
    """For each anchor a, |{||a - b|| : b in P}|, counting the self-distance 0."""
    F = P.field
    return {a: len({dist(F, a, b) for b in P.points}) for a in P.points}


def pinned_summary(counts: dict[Point, int], q: int) -> dict[str, float]:
    values = sorted(counts.values())
    if not values:
        return {"min": 0, "median": 0, "at_least_half_q": 0, "proportion_at_least_half_q": 0.0}
    rich = sum(1 for v in values if 2 * v >= q)
    return {
        "min": values[0],
        "median": statistics.median(values),
        "at_least_half_q": rich,
        "proportion_at_least_half_q": rich / len(values),
    }


def fixed_distance_bound(q: int, pi_d: int) -> Fraction:
    """Right-hand side |Pi_d|^2 / q + 2 (q - 1) |Pi_d|, exactly."""
    return Fraction(pi_d * pi_d, q) + 2 * (q - 1) * pi_d


def energy_scale(n: int, q: int) -> float:
    return n**4 / q**2 + q * n**2


def distance_energy_scale(n: int, q: int) -> float:
    return n**4 / q + q**2 * n**2


def triangle_scale(n: int, q: int) -> float:
    return n**3 / q + n**2.5 / math.sqrt(q) + q * n**1.5


def ratio_reports(P: PointSet) -> dict[str, float]:
    """Measured statistics divided by the shapes of the asymptotic bounds.

    The implicit constants are unknown, so these are reported, never judged.
    """
    q, n = P.q, len(P)
    w = bisector_multiset(P)
    energy = bisector_energy(P, w)
    classes = distance_classes(P)
    pinned = pinned_distance_counts(P)
    out = {
        "energy_over_bound": energy / energy_scale(n, q) if n else 0.0,
        "distance_energy_over_bound": distance_energy(classes) / distance_energy_scale(n, q) if n else 0.0,
        "isosceles_over_bound": isosceles_count(P) / triangle_scale(n, q) if n else 0.0,
        "distinct_bisectors_over_q2": len(w) / q**2,
        "pinned_mean_over_q": (sum(pinned.values()) / n / q) if n else 0.0,
        "pinned_proportion_at_least_half_q": pinned_summary(pinned, q)["proportion_at_least_half_q"],
    }
    # |B(P)| >= n^4 / (n^4/q^2 + q n^2) up to a constant
    out["distinct_bisectors_over_lower_shape"] = (
        len(w) * energy_scale(n, q) / n**4 if n else 0.0
    )
    return out
