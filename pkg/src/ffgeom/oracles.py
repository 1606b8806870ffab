"""Brute-force reference counts, deliberately independent of the fast paths.

These enumerate tuples literally (vectorised with numpy) and recompute
bisectors from the defining equation ||c - a|| = ||c - b|| over the whole
plane instead of the closed-form line. They back the test suite and the
``verify`` command.
"""

from __future__ import annotations

import numpy as np

from .pointsets import PointSet


def _coords(P: PointSet) -> tuple[np.ndarray, np.ndarray]:
    arr = np.array(P.points, dtype=np.int64).reshape(-1, 2)
    return arr[:, 0], arr[:, 1]


def norm_matrix(P: PointSet) -> np.ndarray:
    """N[i, j] = ||P_i - P_j||."""
    x, y = _coords(P)
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    return (dx * dx + dy * dy) % P.q


def bisector_ids(P: PointSet) -> np.ndarray:
    """Label each ordered pair by the exact locus of its bisector.

    The locus of (a, b) is the bitmask of plane points c with
    ||c - a|| = ||c - b||, found by scanning all q^2 points. Pairs with equal
    loci get equal ids; the diagonal gets -1.
    """
    q = P.q
    x, y = _coords(P)
    gx, gy = np.divmod(np.arange(q * q, dtype=np.int64), q)
    # D[i, c] = ||c - P_i||
    D = ((gx[None, :] - x[:, None]) ** 2 + (gy[None, :] - y[:, None]) ** 2) % q
    n = len(x)
    ids = np.full((n, n), -1, dtype=np.int64)
    seen: dict[bytes, int] = {}
    for i in range(n):
        eq = D[i][None, :] == D
        for j in range(n):
            if i != j:
                key = np.packbits(eq[j]).tobytes()
                ids[i, j] = seen.setdefault(key, len(seen))
    return ids


def quadruple_mask(P: PointSet) -> tuple[np.ndarray, np.ndarray]:
    """Boolean array over (x, y, z, w) with x != z, y != w, B(x, z) = B(y, w).

    Returned with the norm matrix for reuse.
    """
    ids = bisector_ids(P)
    # axes: x, z from ids[x, z]; y, w from ids[y, w]
    same = ids[:, None, :, None] == ids[None, :, None, :]
    valid = (ids[:, None, :, None] >= 0) & (ids[None, :, None, :] >= 0)
    return same & valid, norm_matrix(P)


def energy_bruteforce(P: PointSet) -> int:
    """#{(x, y, z, w) in P^4 : B(x, z) = B(y, w), ||x - z|| != 0}."""
    if len(P) < 2:
        return 0
    mask, N = quadruple_mask(P)
    return int((mask & (N[:, None, :, None] != 0)).sum())


def q_prime_bruteforce(P: PointSet) -> dict[int, int]:
    """|Q'_d| for every d != 0 by literal quadruple enumeration."""
    q = P.q
    if len(P) < 2:
        return dict.fromkeys(range(1, q), 0)
    mask, N = quadruple_mask(P)
    nxy = N[:, :, None, None]  # ||x - y|| indexed [x, y]
    nzw = N[None, None, :, :]  # ||z - w|| indexed [z, w]
    sel = mask & (nxy == nzw) & (nxy != 0)
    d_vals = np.broadcast_to(nxy, sel.shape)[sel]
    counts = np.bincount(d_vals, minlength=q)
    return {d: int(counts[d]) for d in range(1, q)}


def q_double_prime_bruteforce(P: PointSet) -> int:
    if len(P) < 2:
        return 0
    mask, N = quadruple_mask(P)
    z = N == 0
    # axes (x, y, z, w): ||x-y||, ||x-w||, ||z-y||, ||z-w||
    cross = (
        z[:, :, None, None]
        & z[:, None, None, :]
        & z.T[None, :, :, None]
        & z[None, None, :, :]
    )
    return int((mask & cross & (N[:, None, :, None] != 0)).sum())


def isosceles_bruteforce(P: PointSet) -> int:
    N = norm_matrix(P)
    # axes (x, y, z)
    eq = N[:, None, :] == N[None, :, :]
    return int((eq & (N[:, :, None] != 0)).sum())


def bisector_weights_bruteforce(P: PointSet) -> list[int]:
    """Sorted multiset of bisector weights over nonzero-distance ordered pairs."""
    ids = bisector_ids(P)
    N = norm_matrix(P)
    sel = (ids >= 0) & (N != 0)
    return sorted(int(c) for c in np.bincount(ids[sel]) if c)


def bisectors_vectorized(q: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Canonical bisector triples for arrays of point pairs (shape (..., 2)); a != b."""
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = [pow(v, -1, q) for v in range(1, q)]
    A = 2 * (b[..., 0] - a[..., 0]) % q
    B = 2 * (b[..., 1] - a[..., 1]) % q
    C = (a[..., 0] ** 2 + a[..., 1] ** 2 - b[..., 0] ** 2 - b[..., 1] ** 2) % q
    s = inv[np.where(A != 0, A, B)]
    return np.stack([A * s % q, B * s % q, C * s % q], axis=-1)


def distance_decomposition_violations(q: int, quads: np.ndarray) -> tuple[int, int]:
    """Count quadruples (x, y, z, w) breaking: non-isotropic B(x, z) = B(y, w)
    implies ||x - y|| = ||z - w||.

    ``quads`` has shape (m, 4, 2). Returns (violations, quadruples where the
    hypothesis held).
    """
    x, y, z, w = (quads[:, i, :] for i in range(4))
    ok = np.any(x != z, axis=1) & np.any(y != w, axis=1)
    x, y, z, w = x[ok], y[ok], z[ok], w[ok]
    l1 = bisectors_vectorized(q, x, z)
    l2 = bisectors_vectorized(q, y, w)
    same = np.all(l1 == l2, axis=1)
    non_iso = (l1[:, 0] ** 2 + l1[:, 1] ** 2) % q != 0
    hyp = same & non_iso
    dxy = ((x - y) ** 2).sum(axis=1) % q
    dzw = ((z - w) ** 2).sum(axis=1) % q
    return int((hyp & (dxy != dzw)).sum()), int(hyp.sum())
