"""Dense symmetric eigensolver by cyclic Jacobi rotations.

Each sweep visits every index pair once in round-robin (tournament) order, so
the n/2 rotations of a round act on disjoint rows and columns and are applied
together as one vectorised update.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError, InvalidInputError


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    m = n + (n % 2)
    order = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(order[i], order[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a < n and b < n]
        if pairs:
            p, q = zip(*pairs)
            rounds.append((np.array(p), np.array(q)))
        order = [order[0], order[-1], *order[1:-1]]
    return rounds


def _rotate_rows(X: np.ndarray, P: np.ndarray, Q: np.ndarray, c: np.ndarray, s: np.ndarray) -> None:
    cc, ss = c[:, None], s[:, None]
    rp, rq = X[P], X[Q]
    new_p = rp * cc
    new_p -= rq * ss
    rq *= cc
    rp *= ss
    rq += rp
    X[P] = new_p
    X[Q] = rq


def off_diagonal_norm(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.linalg.norm(off))


def jacobi_eigh(
    M,
    tol: float = 1e-12,
    max_sweeps: int = 100,
    vectors: bool = True,
) -> tuple[np.ndarray, np.ndarray | None]:
    """Eigenvalues (ascending) and optionally eigenvectors (as columns).

    Stops once the off-diagonal Frobenius norm drops below ``tol * ||M||_F``.
    """
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    fro = float(np.linalg.norm(A))
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-12 * max(fro, 1.0)):
        raise InvalidInputError("matrix is not symmetric")
    A = (A + A.T) / 2
    Vt = np.eye(n) if vectors else None  # transpose of the eigenvector matrix
    rounds = _round_robin(n)
    for _ in range(max_sweeps + 1):
        if off_diagonal_norm(A) <= tol * fro:
            break
        for P, Q in rounds:
            apq = A[P, Q]
            active = apq != 0.0
            if not active.any():
                continue
            app, aqq = A[P, P], A[Q, Q]
            with np.errstate(over="ignore"):  # tiny a_pq: theta -> inf, handled by `big`
                theta = (aqq - app) / (2.0 * np.where(active, apq, 1.0))
            big = np.abs(theta) > 1e150
            safe = np.where(big, 0.0, theta)
            t = np.where(
                big,
                0.5 / np.where(big, theta, 1.0),
                np.where(safe >= 0, 1.0, -1.0) / (np.abs(safe) + np.sqrt(safe * safe + 1.0)),
            )
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # A' = J^T A J = J^T (J^T A)^T for symmetric A: two row passes
            _rotate_rows(A, P, Q, c, s)
            A = np.ascontiguousarray(A.T)
            _rotate_rows(A, P, Q, c, s)
            A[P, Q] = 0.0
            A[Q, P] = 0.0
            if Vt is not None:
                _rotate_rows(Vt, P, Q, c, s)
    else:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps (n={n})")
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], (Vt.T[:, order] if Vt is not None else None)


def eigenvalues_symmetric(M, tol: float = 1e-12, max_sweeps: int = 100) -> list[float]:
    w, _ = jacobi_eigh(M, tol=tol, max_sweeps=max_sweeps, vectors=False)
    return [float(x) for x in w]


def residuals(M, w: np.ndarray, V: np.ndarray, idx=None) -> np.ndarray:
    """||M v - lambda v|| for the selected eigenpairs."""
    A = np.asarray(M, dtype=float)
    idx = range(len(w)) if idx is None else idx
    return np.array([np.linalg.norm(A @ V[:, i] - w[i] * V[:, i]) for i in idx])
