"""Rigid motions of F_p^2: rotations, reflections, translations and their algebra.

Every motion is stored in normal form ``v -> M v + t``. Rotation and reflection
"about a point" are constructors only; the kind tag is a pure function of
``(M, t)`` computed by :func:`classify`.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Union

from .errors import (
    InvalidCirclePairError,
    InvalidKindError,
    InvalidMatrixError,
    InvalidQuadrupleError,
    IsotropicLineError,
)
from .field import PrimeField
from .plane import (
    Circle,
    Line,
    Point,
    all_lines,
    base_point,
    circle_points,
    direction,
    dist,
    is_isotropic,
    make_line,
    norm,
)


class Matrix2(NamedTuple):
    m11: int
    m12: int
    m21: int
    m22: int


class Kind(enum.Enum):
    IDENTITY = "identity"
    ROTATION = "rotation"
    REFLECTION = "reflection"
    TRANSLATION = "translation"
    # reflection matrix with a translation part that leaves no point fixed
    GLIDE_REFLECTION = "glide_reflection"


class Everything(enum.Enum):
    ALL = "all"


ALL = Everything.ALL
FixedSet = Union[Everything, None, Point, Line]


def identity_matrix() -> Matrix2:
    return Matrix2(1, 0, 0, 1)


def is_rotation_matrix(F: PrimeField, M: Matrix2) -> bool:
    p = F.p
    a, b = M.m11, M.m21
    return M.m22 == a and M.m12 == -b % p and (a * a + b * b) % p == 1


def is_reflection_matrix(F: PrimeField, M: Matrix2) -> bool:
    p = F.p
    a, b = M.m11, M.m21
    return M.m12 == b and M.m22 == -a % p and (a * a + b * b) % p == 1


def mat_mul(F: PrimeField, A: Matrix2, B: Matrix2) -> Matrix2:
    p = F.p
    return Matrix2(
        (A.m11 * B.m11 + A.m12 * B.m21) % p,
        (A.m11 * B.m12 + A.m12 * B.m22) % p,
        (A.m21 * B.m11 + A.m22 * B.m21) % p,
        (A.m21 * B.m12 + A.m22 * B.m22) % p,
    )


def mat_vec(F: PrimeField, M: Matrix2, v: Point) -> Point:
    p = F.p
    return Point((M.m11 * v[0] + M.m12 * v[1]) % p, (M.m21 * v[0] + M.m22 * v[1]) % p)


def transpose(M: Matrix2) -> Matrix2:
    return Matrix2(M.m11, M.m21, M.m12, M.m22)


@dataclass(frozen=True)
class RigidMotion:
    """``v -> matrix @ v + translation`` over F_p. Build through :func:`classify`."""

    matrix: Matrix2
    translation: Point
    kind: Kind
    p: int

    def __call__(self, v: Point) -> Point:
        M, (t1, t2), p = self.matrix, self.translation, self.p
        return Point(
            (M.m11 * v[0] + M.m12 * v[1] + t1) % p,
            (M.m21 * v[0] + M.m22 * v[1] + t2) % p,
        )

    apply = __call__

    def sort_key(self) -> tuple:
        return (tuple(self.matrix), tuple(self.translation))


def _has_fixed_point(F: PrimeField, M: Matrix2, t: Point) -> bool:
    return _reflection_fixed_line(F, M, t) is not None


def classify(F: PrimeField, M: Matrix2, t: Point) -> RigidMotion:
    """Normalise ``v -> M v + t`` and attach its kind.

    The rotation and reflection shapes only overlap on matrices that cannot
    satisfy both sign patterns for odd p, so the tag is unambiguous.
    """
    p = F.p
    M = Matrix2(*(m % p for m in M))
    t = Point(t[0] % p, t[1] % p)
    if M == identity_matrix():
        kind = Kind.IDENTITY if t == (0, 0) else Kind.TRANSLATION
    elif is_rotation_matrix(F, M):
        kind = Kind.ROTATION
    elif is_reflection_matrix(F, M):
        kind = Kind.REFLECTION if _has_fixed_point(F, M, t) else Kind.GLIDE_REFLECTION
    else:
        raise InvalidMatrixError(f"{M} is neither a rotation nor a reflection matrix")
    return RigidMotion(M, t, kind, p)


def identity(F: PrimeField) -> RigidMotion:
    return classify(F, identity_matrix(), Point(0, 0))


def translation(F: PrimeField, v: Point) -> RigidMotion:
    return classify(F, identity_matrix(), v)


def rotation_about(F: PrimeField, u: Point, R: Matrix2) -> RigidMotion:
    """The map v -> R(v - u) + u, i.e. translation part u - R u."""
    R = Matrix2(*(m % F.p for m in R))
    if not is_rotation_matrix(F, R):
        raise InvalidMatrixError(f"{R} is not a rotation matrix")
    Ru = mat_vec(F, R, u)
    return classify(F, R, Point(u[0] - Ru[0], u[1] - Ru[1]))


def reflection_about(F: PrimeField, u: Point, S: Matrix2) -> RigidMotion:
    S = Matrix2(*(m % F.p for m in S))
    if not is_reflection_matrix(F, S):
        raise InvalidMatrixError(f"{S} is not a reflection matrix")
    Su = mat_vec(F, S, u)
    return classify(F, S, Point(u[0] - Su[0], u[1] - Su[1]))


def compose(F: PrimeField, m1: RigidMotion, m2: RigidMotion) -> RigidMotion:
    """``m2 o m1``: apply m1 first."""
    M = mat_mul(F, m2.matrix, m1.matrix)
    t = mat_vec(F, m2.matrix, m1.translation)
    return classify(F, M, Point(t[0] + m2.translation[0], t[1] + m2.translation[1]))


def inverse(F: PrimeField, m: RigidMotion) -> RigidMotion:
    # unitary: M^-1 = M^T
    Mt = transpose(m.matrix)
    t = mat_vec(F, Mt, m.translation)
    return classify(F, Mt, Point(-t[0], -t[1]))


def _solve2(F: PrimeField, M: Matrix2, rhs: Point) -> Point:
    p = F.p
    det = (M.m11 * M.m22 - M.m12 * M.m21) % p
    inv = pow(det, -1, p)
    return Point(
        (M.m22 * rhs[0] - M.m12 * rhs[1]) * inv % p,
        (M.m11 * rhs[1] - M.m21 * rhs[0]) * inv % p,
    )


def _reflection_fixed_line(F: PrimeField, S: Matrix2, t: Point) -> Line | None:
    # fixed points solve (S - I) v + t = 0, a rank-one system
    p = F.p
    rows = [
        ((S.m11 - 1) % p, S.m12 % p, t[0] % p),
        (S.m21 % p, (S.m22 - 1) % p, t[1] % p),
    ]
    live = [r for r in rows if r[0] or r[1]]
    if any(not (r[0] or r[1]) and r[2] for r in rows):
        return None
    r0 = live[0]
    for r in live[1:]:
        cross = (
            (r0[1] * r[2] - r0[2] * r[1]) % p,
            (r0[2] * r[0] - r0[0] * r[2]) % p,
            (r0[0] * r[1] - r0[1] * r[0]) % p,
        )
        if any(cross):
            return None
    return make_line(F, *r0)


def fixed_set(F: PrimeField, m: RigidMotion) -> FixedSet:
    """ALL for the identity, None for fixed-point-free motions, else a Point or a Line."""
    if m.kind is Kind.IDENTITY:
        return ALL
    if m.kind in (Kind.TRANSLATION, Kind.GLIDE_REFLECTION):
        return None
    if m.kind is Kind.ROTATION:
        # (R - I) u = -t; det(R - I) = 2 - 2a is nonzero for R != I
        M = m.matrix
        return _solve2(
            F,
            Matrix2(M.m11 - 1, M.m12, M.m21, M.m22 - 1),
            Point(-m.translation[0], -m.translation[1]),
        )
    return _reflection_fixed_line(F, m.matrix, m.translation)


def reflection_fixing_line(F: PrimeField, l: Line) -> RigidMotion:
    if is_isotropic(F, l):
        raise IsotropicLineError(f"{l} is isotropic; no reflection fixes it")
    p = F.p
    d1, d2 = direction(F, l)
    s = pow(norm(F, Point(d1, d2)), -1, p)
    S = Matrix2(
        (d1 * d1 - d2 * d2) * s % p,
        2 * d1 * d2 * s % p,
        2 * d1 * d2 * s % p,
        (d2 * d2 - d1 * d1) * s % p,
    )
    return reflection_about(F, base_point(F, l), S)


def _unit_circle(F: PrimeField) -> list[Point]:
    return sorted(circle_points(F, Circle(Point(0, 0), 1)))


def enumerate_rotation_matrices(F: PrimeField) -> list[Matrix2]:
    return [Matrix2(a, -b % F.p, b, a) for a, b in _unit_circle(F)]


def enumerate_reflection_matrices(F: PrimeField) -> list[Matrix2]:
    return [Matrix2(a, b, b, -a % F.p) for a, b in _unit_circle(F)]


@lru_cache(maxsize=32)
def enumerate_reflections(F: PrimeField) -> tuple[RigidMotion, ...]:
    """One reflection per non-isotropic line, in canonical order."""
    refl = (reflection_fixing_line(F, l) for l in all_lines(F) if not is_isotropic(F, l))
    return tuple(sorted(refl, key=RigidMotion.sort_key))


@lru_cache(maxsize=32)
def enumerate_motions(F: PrimeField) -> tuple[RigidMotion, ...]:
    """Every affine map with a rotation or reflection matrix."""
    mats = enumerate_rotation_matrices(F) + enumerate_reflection_matrices(F)
    pts = [Point(x, y) for x in range(F.p) for y in range(F.p)]
    out = [classify(F, M, t) for M in mats for t in pts]
    return tuple(sorted(out, key=RigidMotion.sort_key))


def rotation_mapping_on_circle(F: PrimeField, u: Point, x: Point, y: Point) -> RigidMotion:
    """The unique rotation about ``u`` sending x to y (identity when x == y)."""
    r = dist(F, x, u)
    if r == 0 or dist(F, y, u) != r:
        raise InvalidCirclePairError(
            f"need ||x-u|| = ||y-u|| != 0, got {r} and {dist(F, y, u)}"
        )
    p = F.p
    x1, x2 = (x[0] - u[0]) % p, (x[1] - u[1]) % p
    y1, y2 = (y[0] - u[0]) % p, (y[1] - u[1]) % p
    s = pow(r, -1, p)
    a = (x1 * y1 + x2 * y2) * s % p
    b = (x1 * y2 - x2 * y1) * s % p
    return rotation_about(F, u, Matrix2(a, -b % p, b, a))


def _check_quadruple(F: PrimeField, x: Point, y: Point, z: Point, w: Point) -> None:
    if (x, y) == (z, w):
        raise InvalidQuadrupleError("(x, y) must differ from (z, w)")
    d = dist(F, x, y)
    if d == 0 or dist(F, z, w) != d:
        raise InvalidQuadrupleError(
            f"need ||x-y|| = ||z-w|| != 0, got {d} and {dist(F, z, w)}"
        )


def motion_mapping_pair(F: PrimeField, x: Point, y: Point, z: Point, w: Point) -> RigidMotion:
    """The unique rotation or translation with x -> z and y -> w."""
    _check_quadruple(F, x, y, z, w)
    p = F.p
    shift = translation(F, Point(z[0] - x[0], z[1] - x[1]))
    if ((x[0] - y[0] - z[0] + w[0]) % p, (x[1] - y[1] - z[1] + w[1]) % p) == (0, 0):
        return shift
    turn = rotation_mapping_on_circle(F, z, shift(y), w)
    return compose(F, shift, turn)


def reflection_pair_decompositions(
    F: PrimeField, m: RigidMotion
) -> list[tuple[RigidMotion, RigidMotion]]:
    """All ordered reflection pairs (S1, S2) with S2 o S1 = m.

    S1 is an involution, so S2 is forced to be m o S1; the pair counts when
    that map is a genuine reflection.
    """
    if m.kind not in (Kind.ROTATION, Kind.TRANSLATION):
        raise InvalidKindError(f"cannot decompose a motion of kind {m.kind.value}")
    out = []
    for s1 in enumerate_reflections(F):
        s2 = compose(F, s1, m)
        if s2.kind is Kind.REFLECTION:
            out.append((s1, s2))
    return out


def count_reflection_pairs_mapping(F: PrimeField, x: Point, y: Point, z: Point, w: Point) -> int:
    """Number of ordered reflection pairs (R1, R2) with R1(x) = R2(z), R1(y) = R2(w).

    Plain double loop over all reflections.
    """
    _check_quadruple(F, x, y, z, w)
    refl = enumerate_reflections(F)
    left = [(r(x), r(y)) for r in refl]
    right = [(r(z), r(w)) for r in refl]
    return sum(1 for a in left for b in right if a == b)


def reflection_pair_census(F: PrimeField) -> Counter:
    """Classify every ordered pair of reflections by the kind of S2 o S1.

    Keys: ``rotation``, ``translation_nonisotropic``, ``translation_isotropic``,
    ``identity``.
    """
    refl = enumerate_reflections(F)
    census: Counter = Counter()
    for s1 in refl:
        for s2 in refl:
            m = compose(F, s1, s2)
            if m.kind is Kind.TRANSLATION:
                key = "translation_isotropic" if norm(F, m.translation) == 0 else "translation_nonisotropic"
            else:
                key = m.kind.value
            census[key] += 1
    return census
