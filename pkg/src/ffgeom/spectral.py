"""Graphs over F_p^2 and their spectra.

Two graphs are built here:

* the bisector graph on ordered pairs at distance d, where (x, y) ~ (z, w)
  when a reflection maps x to z and y to w. Every vertex carries one loop,
  from the reflection across the line through x and y;
* the incidence (polarity) graph of the projective plane, where [a:b:c] ~
  [x:y:z] when ax + by + cz = 0, with loops at absolute points.

Adjacency and A^2 work is integer-exact; floats only enter through the
eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidDistanceError, InvalidInputError, SizeGuardError
from .field import PrimeField
from .jacobi import eigenvalues_symmetric
from .motions import enumerate_reflections
from .plane import Line, Point

EIGEN_TOL = 1e-8
MAX_BISECTOR_Q = 13
MAX_EIGEN_Q = 7
MAX_INCIDENCE_Q = 31


@dataclass
class LabeledGraph:
    vertices: list
    adjacency: np.ndarray
    kind: str
    field: PrimeField
    d: int | None = None
    _index: dict = field(default=None, init=False, repr=False)  # type: ignore[assignment]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, label) -> int:
        if self._index is None:
            self._index = {v: i for i, v in enumerate(self.vertices)}
        return self._index[label]

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)


def _point_index(q: int, pts: np.ndarray) -> np.ndarray:
    return pts[..., 0] * q + pts[..., 1]


def bisector_graph(F: PrimeField, d: int) -> LabeledGraph:
    q = F.p
    d %= q
    if d == 0:
        raise InvalidDistanceError("the bisector graph needs d != 0")
    if q > MAX_BISECTOR_Q:
        raise SizeGuardError(f"bisector graph for q={q} exceeds the q <= {MAX_BISECTOR_Q} guard")
    grid = np.array([(x, y) for x in range(q) for y in range(q)], dtype=np.int64)
    diff = grid[:, None, :] - grid[None, :, :]
    nrm = (diff[..., 0] ** 2 + diff[..., 1] ** 2) % q
    xi, yi = np.nonzero(nrm == d)  # row-major order = lexicographic on (x, y)
    vertices = [(Point(*map(int, grid[i])), Point(*map(int, grid[j]))) for i, j in zip(xi, yi)]
    n = len(vertices)
    vid = np.full(q**4, -1, dtype=np.int64)
    vid[xi * q * q + yi] = np.arange(n)

    A = np.zeros((n, n), dtype=np.int64)
    rows = np.arange(n)
    for S in enumerate_reflections(F):
        M = np.array(S.matrix, dtype=np.int64).reshape(2, 2)
        img = (grid @ M.T + np.array(S.translation)) % q
        img_idx = _point_index(q, img)
        cols = vid[img_idx[xi] * q * q + img_idx[yi]]
        A[rows, cols] = 1
    return LabeledGraph(vertices, A, "bisector", F, d)


def _translation_offsets(G: LabeledGraph) -> tuple[np.ndarray, np.ndarray]:
    """Per vertex pair: whether v2 = v1 + t for a common t, and that t's norm."""
    q = G.field.p
    X = np.array([(x[0], x[1], y[0], y[1]) for x, y in G.vertices], dtype=np.int64)
    tx = (X[None, :, 0] - X[:, None, 0]) % q
    ty = (X[None, :, 1] - X[:, None, 1]) % q
    same = (tx == (X[None, :, 2] - X[:, None, 2]) % q) & (ty == (X[None, :, 3] - X[:, None, 3]) % q)
    is_translate = same & ((tx != 0) | (ty != 0))
    return is_translate, (tx * tx + ty * ty) % q


def expected_residual(G: LabeledGraph) -> np.ndarray:
    """The case table for E = A^2 - aJ - bI, read off the vertex geometry.

    q = 1 mod 4: 1 for a non-isotropic translate, 1 - q for an isotropic one.
    q = 3 mod 4: -1 for any translate. Zero elsewhere, diagonal included.
    """
    _require_bisector(G)
    q = G.field.p
    is_translate, tnorm = _translation_offsets(G)
    if q % 4 == 1:
        return np.where(is_translate, np.where(tnorm != 0, 1, 1 - q), 0).astype(np.int64)
    return np.where(is_translate, -1, 0).astype(np.int64)


def _require_bisector(G: LabeledGraph) -> None:
    if G.kind != "bisector":
        raise InvalidInputError(f"expected a bisector graph, got {G.kind!r}")


def residual_coefficients(q: int) -> tuple[int, int]:
    """(a, b) with A^2 = aJ + bI + E."""
    if q % 4 == 1:
        return q - 1, (q - 1) ** 2
    return q + 1, (q - 1) * (q + 1)


def a_squared_residual(G: LabeledGraph, rows: Sequence[int] | None = None) -> tuple[np.ndarray, int]:
    """E = A^2 - aJ - bI (restricted to ``rows`` if given) and its largest |row| sum."""
    _require_bisector(G)
    q = G.field.p
    a, b = residual_coefficients(q)
    A = G.adjacency
    idx = np.arange(G.n) if rows is None else np.asarray(rows, dtype=np.int64)
    E = A[idx] @ A - a
    E[np.arange(len(idx)), idx] -= b
    return E, int(np.abs(E).sum(axis=1).max()) if len(idx) else 0


def gershgorin_bound(M) -> float:
    """max_i (|a_ii| + r_i) with r_i the full absolute row sum, diagonal included."""
    A = np.asarray(M, dtype=float)
    r = np.abs(A).sum(axis=1)
    return float((np.abs(np.diag(A)) + r).max()) if len(A) else 0.0


def gershgorin_contains(M, eigenvalues: Iterable[float], slack: float = 1e-9) -> bool:
    """Every eigenvalue lies in some disk |z - a_ii| <= r_i."""
    A = np.asarray(M, dtype=float)
    centers = np.diag(A)
    radii = np.abs(A).sum(axis=1)
    scale = max(1.0, float(radii.max()) if len(radii) else 1.0)
    return all(bool((np.abs(lam - centers) <= radii + slack * scale).any()) for lam in eigenvalues)


def split_principal(eigs: Sequence[float]) -> tuple[float, list[float]]:
    """Largest eigenvalue and the remaining ones."""
    s = sorted(eigs)
    return s[-1], s[:-1]


def spectrum(G: LabeledGraph) -> list[float]:
    return eigenvalues_symmetric(G.adjacency)


def second_eigenvalue_check(G: LabeledGraph, eigs: Sequence[float] | None = None) -> dict:
    _require_bisector(G)
    q = G.field.p
    if q > MAX_EIGEN_Q:
        raise SizeGuardError(f"eigenvalue check limited to q <= {MAX_EIGEN_Q}, got {q}")
    if eigs is None:
        eigs = spectrum(G)
    degree = int(G.degrees()[0])
    principal, rest = split_principal(eigs)
    second = max((abs(x) for x in rest), default=0.0)
    bound = 2 * (q - 1)
    regular = bool((G.degrees() == degree).all())
    return {
        "q": q,
        "d": G.d,
        "n": G.n,
        "degree": degree,
        "regular": regular,
        "principal": principal,
        "second_abs": second,
        "bound": bound,
        "passed": regular
        and abs(principal - degree) <= EIGEN_TOL
        and second <= bound + EIGEN_TOL,
    }


def expander_mixing_check(
    G: LabeledGraph,
    S: Iterable[int],
    T: Iterable[int],
    lam: float | None = None,
) -> dict:
    """|E(S, T) - delta |S||T| / n| <= lam sqrt(|S||T|) over vertex indices S, T.

    E(S, T) counts ordered pairs (u, v) in S x T that are adjacent, loops included.
    """
    S, T = sorted(set(S)), sorted(set(T))
    A = G.adjacency
    deg = G.degrees()
    delta = int(deg[0]) if G.n else 0
    if G.n and not (deg == delta).all():
        raise InvalidInputError("expander mixing needs a regular graph")
    if lam is None:
        _, rest = split_principal(spectrum(G))
        lam = max((abs(x) for x in rest), default=0.0)
    edges = int(A[np.ix_(S, T)].sum()) if S and T else 0
    expected = delta * len(S) * len(T) / G.n if G.n else 0.0
    deviation = abs(edges - expected)
    bound = lam * math.sqrt(len(S) * len(T))
    return {
        "edges": edges,
        "expected": expected,
        "deviation": deviation,
        "lambda": lam,
        "bound": bound,
        "passed": deviation <= bound + EIGEN_TOL,
    }


def projective_points(F: PrimeField) -> list[tuple[int, int, int]]:
    """q^2 + q + 1 points, last nonzero coordinate scaled to 1, sorted."""
    q = F.p
    pts = [(a, b, 1) for a in range(q) for b in range(q)]
    pts += [(a, 1, 0) for a in range(q)]
    pts.append((1, 0, 0))
    return sorted(pts)


def incidence_graph(F: PrimeField) -> LabeledGraph:
    q = F.p
    if q > MAX_INCIDENCE_Q:
        raise SizeGuardError(f"incidence graph for q={q} exceeds the q <= {MAX_INCIDENCE_Q} guard")
    verts = projective_points(F)
    V = np.array(verts, dtype=np.int64)
    A = ((V @ V.T) % q == 0).astype(np.int64)
    return LabeledGraph(verts, A, "incidence", F)


def incidence_spectrum_check(G: LabeledGraph, eigs: Sequence[float] | None = None) -> dict:
    if G.kind != "incidence":
        raise InvalidInputError(f"expected an incidence graph, got {G.kind!r}")
    q = G.field.p
    if eigs is None:
        eigs = spectrum(G)
    principal, rest = split_principal(eigs)
    root = math.sqrt(q)
    second = max((abs(x) for x in rest), default=0.0)
    near_root = all(abs(abs(x) - root) <= EIGEN_TOL for x in rest)
    return {
        "q": q,
        "n": G.n,
        "regular": bool((G.degrees() == q + 1).all()),
        "principal": principal,
        "second_abs": second,
        "bound": root,
        "all_at_sqrt_q": near_root,
        "passed": abs(principal - (q + 1)) <= EIGEN_TOL and second <= root + EIGEN_TOL,
    }


def _check_weights(weights: Mapping, what: str) -> None:
    for key, w in weights.items():
        if not isinstance(w, (int, np.integer)) or isinstance(w, bool) or w <= 0:
            raise InvalidInputError(f"{what} weight for {key} must be a positive integer, got {w!r}")


def incidences(F: PrimeField, point_weights: Mapping[Point, int], line_weights: Mapping[Line, int]) -> int:
    """I(P, L) = sum of w'(p) w(l) over incident pairs."""
    q = F.p
    total = 0
    for (a, b, c), wl in line_weights.items():
        total += wl * sum(wp for (x, y), wp in point_weights.items() if (a * x + b * y + c) % q == 0)
    return total


def incidences_via_graph(G: LabeledGraph, point_weights: Mapping[Point, int], line_weights: Mapping[Line, int]) -> int:
    """The same count as <w, A w'> on the projective incidence graph."""
    if G.kind != "incidence":
        raise InvalidInputError(f"expected an incidence graph, got {G.kind!r}")
    q = G.field.p
    wp = np.zeros(G.n, dtype=np.int64)
    wl = np.zeros(G.n, dtype=np.int64)
    for (x, y), w in point_weights.items():
        wp[G.index((x % q, y % q, 1))] += w
    for l, w in line_weights.items():
        wl[G.index(_projective_canonical(q, l))] += w
    return int(wl @ G.adjacency @ wp)


def _projective_canonical(q: int, v: Sequence[int]) -> tuple[int, int, int]:
    v = [x % q for x in v]
    lead = next(x for x in reversed(v) if x)
    s = pow(lead, -1, q)
    return tuple(x * s % q for x in v)  # type: ignore[return-value]


def weighted_incidence_check(
    F: PrimeField,
    point_weights: Mapping[Point, int],
    line_weights: Mapping[Line, int],
) -> dict:
    """I <= |P||L|/q + sqrt(sum w'^2) sqrt(sum w^2) sqrt(q), compared in integers.

    Multiply through by q: q I - |P||L| <= q sqrt(q S_P S_L); square when the
    left side is positive.
    """
    q = F.p
    _check_weights(point_weights, "point")
    _check_weights(line_weights, "line")
    for x, y in point_weights:
        if not (0 <= x < q and 0 <= y < q):
            raise InvalidInputError(f"point {(x, y)} not canonical mod {q}")
    for l in line_weights:
        if len(l) != 3 or (l[0] % q == 0 and l[1] % q == 0):
            raise InvalidInputError(f"{l} does not describe an affine line")
    I = incidences(F, point_weights, line_weights)
    total_p = sum(point_weights.values())
    total_l = sum(line_weights.values())
    sq_p = sum(w * w for w in point_weights.values())
    sq_l = sum(w * w for w in line_weights.values())
    lhs = q * I - total_p * total_l
    passed = lhs <= 0 or lhs * lhs <= q * q * q * sq_p * sq_l
    bound = total_p * total_l / q + math.sqrt(sq_p * sq_l * q)
    return {
        "q": q,
        "incidences": I,
        "points_total": total_p,
        "lines_total": total_l,
        "bound": bound,
        "passed": passed,
    }
