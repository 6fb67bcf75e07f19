"""Rank-revealing helpers built on the SVD.

Every rank decision in the package goes through :func:`rank_tol` so that
null spaces, complements and rank checks agree with each other.
"""

from __future__ import annotations

import numpy as np


def rank_tol(mat: np.ndarray, smax: float | None = None) -> float:
    """Threshold ``max(rows, cols) * eps * sigma_max``."""
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0.0
    if smax is None:
        smax = np.linalg.norm(mat, 2)
    return max(mat.shape) * np.finfo(float).eps * smax


def numerical_rank(mat: np.ndarray) -> int:
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    if mat.size == 0:
        return 0
    s = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(s > rank_tol(mat, s[0])))


def null_space(mat: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the right null space, columns in SVD order."""
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    rows, cols = mat.shape
    if cols == 0:
        return np.zeros((0, 0))
    if rows == 0:
        return np.eye(cols)
    _, s, vh = np.linalg.svd(mat)
    rank = int(np.sum(s > rank_tol(mat, s[0] if s.size else 0.0)))
    return vh[rank:].T.copy()


def orth(mat: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the column space."""
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    rows, cols = mat.shape
    if cols == 0 or rows == 0:
        return np.zeros((rows, 0))
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    rank = int(np.sum(s > rank_tol(mat, s[0])))
    return u[:, :rank].copy()


def orth_complement(basis: np.ndarray, dim: int) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of span(basis) in R^dim."""
    basis = np.asarray(basis, dtype=float)
    if dim == 0 or basis.size == 0:
        return np.eye(dim)
    u, s, _ = np.linalg.svd(basis, full_matrices=True)
    rank = int(np.sum(s > rank_tol(basis, s[0])))
    return u[:, rank:].copy()


def fix_signs(vectors: np.ndarray, rel_tol: float = 1e-8) -> np.ndarray:
    """Flip columns so the first significant entry of each is positive."""
    vectors = np.array(vectors, dtype=float, copy=True)
    for k in range(vectors.shape[1]):
        col = vectors[:, k]
        big = np.abs(col) > rel_tol * np.max(np.abs(col), initial=0.0)
        if big.any() and col[np.argmax(big)] < 0:
            vectors[:, k] = -col
    return vectors
