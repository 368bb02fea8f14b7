"""Dense real symmetric linear algebra used as the independent oracle.

The eigensolver is a cyclic Jacobi method with round-robin ordering: each
round applies ``n // 2`` rotations on disjoint index pairs at once, which
lets numpy vectorize a whole round.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, DomainError

MAX_SWEEPS = 30
ROTATION_THRESHOLD = 1e-15
SYMMETRY_TOL = 1e-12


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray   # ascending
    eigenvectors: np.ndarray  # columns, orthonormal


def as_symmetric(M) -> np.ndarray:
    """Validate and return a symmetric float copy of ``M``."""
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {A.shape}")
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    if A.size and np.max(np.abs(A - A.T)) > SYMMETRY_TOL * scale:
        raise DomainError("matrix is not symmetric")
    return 0.5 * (A + A.T)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings covering every index pair once over ``m - 1`` rounds."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p, q = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        rounds.append((np.array(p, dtype=np.intp), np.array(q, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


_ROUNDS_CACHE: dict[int, list] = {}


def _rounds(n: int):
    r = _ROUNDS_CACHE.get(n)
    if r is None:
        r = _ROUNDS_CACHE[n] = _round_robin(n)
    return r


def _off_norm(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.linalg.norm(off))


def eigensolve(M, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """Eigen-decomposition of a real symmetric matrix by Jacobi rotations."""
    A = as_symmetric(M)
    n = A.shape[0]
    V = np.eye(n)
    if n <= 1:
        return EigenDecomposition(np.diag(A).copy(), V)
    fro = float(np.linalg.norm(A))
    if fro == 0.0:
        return EigenDecomposition(np.zeros(n), V)
    tol = ROTATION_THRESHOLD * fro
    rounds = _rounds(n)

    for _ in range(max_sweeps):
        rotated = False
        for P, Q in rounds:
            apq = A[P, Q]
            active = np.abs(apq) > tol
            if not active.any():
                continue
            rotated = True
            P, Q, apq = P[active], Q[active], apq[active]
            app, aqq = A[P, P], A[Q, Q]
            tau = (aqq - app) / (2.0 * apq)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # A <- J^T A J with J acting on columns (p, q) as [[c, s], [-s, c]]
            rp, rq = A[P, :], A[Q, :]
            A[P, :] = c[:, None] * rp - s[:, None] * rq
            A[Q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = A[:, P], A[:, Q]
            A[:, P] = cp * c - cq * s
            A[:, Q] = cp * s + cq * c
            A[P, Q] = 0.0
            A[Q, P] = 0.0
            vp, vq = V[:, P], V[:, Q]
            V[:, P] = vp * c - vq * s
            V[:, Q] = vp * s + vq * c
        if not rotated or _off_norm(A) <= tol:
            break
    else:
        if _off_norm(A) > tol * 10:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], V[:, order])


def eigvalsh(M) -> np.ndarray:
    return eigensolve(M).eigenvalues


def spectral_norm(B) -> float:
    """Largest singular value, from the smaller Gram matrix."""
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if B.size == 0:
        return 0.0
    G = B @ B.T if B.shape[0] <= B.shape[1] else B.T @ B
    return math.sqrt(max(float(eigvalsh(G)[-1]), 0.0))


def angle_to_subspace(f, basis, orth_tol: float = 1e-10) -> tuple[float, float]:
    """Acute angle between ``f`` and the span of the orthonormal columns of
    ``basis``; returns ``(theta, tan_theta)`` with ``tan_theta = inf`` when
    the projection vanishes."""
    f = np.asarray(f, dtype=float).ravel()
    Q = np.asarray(basis, dtype=float)
    if Q.ndim == 1:
        Q = Q[:, None]
    nf = float(np.linalg.norm(f))
    if nf == 0.0:
        raise DomainError("zero vector has no angle")
    k = Q.shape[1]
    if np.max(np.abs(Q.T @ Q - np.eye(k)), initial=0.0) > orth_tol:
        raise DomainError("basis is not orthonormal")
    proj = Q @ (Q.T @ f)
    inside = float(np.linalg.norm(proj))
    outside = float(np.linalg.norm(f - proj))
    theta = math.atan2(outside, inside)
    if inside < 1e-14 * nf:
        return theta, math.inf
    return theta, outside / inside


def coordinate_angle(f, n0: int) -> tuple[float, float]:
    """``angle_to_subspace`` for the span of the first ``n0`` unit vectors."""
    f = np.asarray(f, dtype=float).ravel()
    inside = float(np.linalg.norm(f[:n0]))
    outside = float(np.linalg.norm(f[n0:]))
    if inside == 0.0 and outside == 0.0:
        raise DomainError("zero vector has no angle")
    theta = math.atan2(outside, inside)
    if inside < 1e-14 * math.hypot(inside, outside):
        return theta, math.inf
    return theta, outside / inside


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR of a Gaussian with sign fix)."""
    Z = rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    return Q * np.where(np.diag(R) < 0, -1.0, 1.0)


def with_spectrum(eigenvalues, rng: np.random.Generator) -> np.ndarray:
    """Random symmetric matrix ``Q diag(eigenvalues) Q^T``."""
    w = np.asarray(eigenvalues, dtype=float)
    Q = random_orthogonal(len(w), rng)
    A = (Q * w) @ Q.T
    return 0.5 * (A + A.T)
