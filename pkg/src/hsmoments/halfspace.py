"""Closed-form solution of ``A w' = -Q w`` on ``[0, inf)`` with ``w(inf) = 0``.

The state is split with an orthogonal basis ``V = [V1, V2, V3]``:

* ``V2^T w`` vanishes identically (``G^T A w = 0`` for ``G`` spanning Null(Q)),
* ``V3^T w = T exp(-y / Lambda) z`` holds the decaying modes,
* ``V1^T w`` is recovered algebraically from the ``V3`` part.

Every basis is built per parity block, so the block structure of ``A`` and
``Q`` carries over to the reduced matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as sla

from .assembly import MomentSystem
from .errors import (
    IllPosedBoundaryError,
    InconsistencyError,
    InconsistentDataError,
    InvalidArgumentError,
)
from .linalg import fix_signs, null_space, numerical_rank, orth, orth_complement, rank_tol


def _blockdiag(top: np.ndarray, bottom: np.ndarray) -> np.ndarray:
    out = np.zeros((top.shape[0] + bottom.shape[0], top.shape[1] + bottom.shape[1]))
    out[: top.shape[0], : top.shape[1]] = top
    out[top.shape[0] :, top.shape[1] :] = bottom
    return out


@dataclass(frozen=True, eq=False)
class Decomposition:
    m: int
    n: int
    G: np.ndarray
    G_e: np.ndarray
    G_o: np.ndarray
    X: np.ndarray
    V1: np.ndarray
    V2: np.ndarray
    V3: np.ndarray
    m3: int  # even rows of V3
    U2: np.ndarray
    A21: np.ndarray
    A33: np.ndarray
    Q33: np.ndarray
    L: np.ndarray
    T: np.ndarray
    Lam: np.ndarray  # positive decay lengths, descending
    R: np.ndarray
    p1: int
    p2: int
    r1: int
    r2: int
    c: int
    # V1 coefficients as linear maps of the modal amplitudes exp(-y/Lam) * z
    C_V1_direct: np.ndarray
    C_V1_integral: np.ndarray

    @property
    def p(self) -> int:
        return self.p1 + self.p2

    @property
    def r(self) -> int:
        return self.r1 + self.r2

    @property
    def nplus(self) -> int:
        return len(self.Lam)

    @property
    def modes(self) -> np.ndarray:
        """``(m+n) x n_plus`` matrix ``W`` with ``w(y) = W (exp(-y/Lam) * z)``."""
        return self.V3 @ self.T + self.V1 @ (self.C_V1_direct + self.C_V1_integral)

    def counts(self) -> dict:
        return dict(m=self.m, n=self.n, p1=self.p1, p2=self.p2, r1=self.r1, r2=self.r2, n_plus=self.nplus)


def signature_counts(D: np.ndarray) -> tuple[int, int, int]:
    """(zero, positive, negative) eigenvalue counts of ``[[0, D], [D^T, 0]]``."""
    D = np.atleast_2d(np.asarray(D, dtype=float))
    gamma = numerical_rank(D)
    return sum(D.shape) - 2 * gamma, gamma, gamma


def generalized_modes(
    A33: np.ndarray, Q33: np.ndarray, expected: Optional[int] = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Positive modes of the pencil ``A33 t = lam Q33 t``.

    Returns ``(T, Lam, L, R)`` with ``Q33 = L L^T``, ``R`` the orthonormal
    positive eigenvectors of ``L^-1 A33 L^-T`` and ``T = L^-T R``, so that
    ``Q33^-1 A33 T = T diag(Lam)``.  Eigenvalues are sorted descending and
    eigenvector signs fixed (first significant entry positive).
    """
    size = A33.shape[0]
    if size == 0:
        empty = np.zeros((0, 0))
        if expected not in (None, 0):
            raise InconsistencyError(f"expected {expected} positive modes, found 0")
        return empty, np.zeros(0), empty, empty
    try:
        L = np.linalg.cholesky(Q33)
    except np.linalg.LinAlgError:
        raise InconsistencyError("Q33 is not positive definite; rank threshold is off") from None
    tmp = sla.solve_triangular(L, A33, lower=True)
    K = sla.solve_triangular(L, tmp.T, lower=True)
    K = 0.5 * (K + K.T)
    evals, evecs = np.linalg.eigh(K)
    tol = rank_tol(K, np.max(np.abs(evals)))
    keep = np.nonzero(evals > tol)[0][::-1]
    if expected is not None and len(keep) != expected:
        raise InconsistencyError(f"expected {expected} positive modes, found {len(keep)}")
    Lam = evals[keep]
    R = fix_signs(evecs[:, keep])
    T = sla.solve_triangular(L.T, R, lower=False)
    return T, Lam, L, R


def decompose(system: MomentSystem) -> Decomposition:
    m, n = system.m, system.n
    A, Q, M = system.A, system.Q, system.M

    G_e = fix_signs(null_space(system.Q_e)) if m else np.zeros((0, 0))
    G_o = fix_signs(null_space(system.Q_o)) if n else np.zeros((0, 0))
    p1, p2 = G_e.shape[1], G_o.shape[1]
    coupling = G_e.T @ M @ G_o
    c = numerical_rank(coupling) if coupling.size else 0
    X_e = fix_signs(null_space(coupling.T)) if p1 else np.zeros((0, 0))
    X_o = fix_signs(null_space(coupling)) if p2 else np.zeros((0, 0))
    r1, r2 = X_e.shape[1], X_o.shape[1]
    if r1 != p1 - c or r2 != p2 - c:
        raise InconsistencyError(f"null-space counts disagree: p=({p1},{p2}), r=({r1},{r2}), c={c}")

    Y1 = G_e @ X_e if p1 else np.zeros((m, 0))
    Z1 = G_o @ X_o if p2 else np.zeros((n, 0))
    Y2 = fix_signs(orth(M @ G_o)) if p2 else np.zeros((m, 0))
    Z2 = fix_signs(orth(M.T @ G_e)) if p1 else np.zeros((n, 0))
    if Y2.shape[1] != p2 or Z2.shape[1] != p1:
        raise InconsistencyError("A G is rank deficient")
    Y3 = fix_signs(orth_complement(np.hstack([Y1, Y2]), m))
    Z3 = fix_signs(orth_complement(np.hstack([Z1, Z2]), n))

    G = _blockdiag(G_e.reshape(m, p1), G_o.reshape(n, p2))
    X = _blockdiag(X_e.reshape(p1, r1), X_o.reshape(p2, r2))
    V1 = _blockdiag(Y1, Z1)
    V2 = _blockdiag(Y2, Z2)
    V3 = _blockdiag(Y3, Z3)

    U2 = A @ V1
    A21 = U2.T @ A @ V1
    if numerical_rank(A21) != r1 + r2:
        raise InconsistencyError("U2^T A V1 is singular")
    A33 = V3.T @ A @ V3
    Q33 = V3.T @ Q @ V3
    Q33 = 0.5 * (Q33 + Q33.T)
    expected = n - (p1 + p2 + r1 + r2) // 2
    T, Lam, L, R = generalized_modes(A33, Q33, expected=expected)

    if r1 + r2:
        U2AV3 = U2.T @ A @ V3
        U2QV3 = U2.T @ Q @ V3
        C_direct = -np.linalg.solve(A21, U2AV3 @ T)
        C_integral = np.linalg.solve(A21, U2QV3 @ T) * Lam
    else:
        C_direct = C_integral = np.zeros((0, len(Lam)))

    return Decomposition(
        m=m, n=n, G=G, G_e=G_e.reshape(m, p1), G_o=G_o.reshape(n, p2), X=X,
        V1=V1, V2=V2, V3=V3, m3=Y3.shape[1], U2=U2, A21=A21, A33=A33, Q33=Q33,
        L=L, T=T, Lam=Lam, R=R, p1=p1, p2=p2, r1=r1, r2=r2, c=c,
        C_V1_direct=C_direct, C_V1_integral=C_integral,
    )


@dataclass(frozen=True, eq=False)
class LayerSolution:
    decomposition: Decomposition
    z0: np.ndarray
    slip: np.ndarray  # solved G_e^T f_e (empty when not part of the solve)
    f_e: Optional[np.ndarray] = None  # even boundary data with the slip filled in
    f_o: Optional[np.ndarray] = None

    def __call__(self, y):
        return evaluate_solution(self, y)

    def derivative(self, y):
        return evaluate_derivative(self, y)

    @property
    def decay_lengths(self) -> np.ndarray:
        return self.decomposition.Lam


def make_solution(dec: Decomposition, z0, slip=None, f_e=None, f_o=None) -> LayerSolution:
    z0 = np.asarray(z0, dtype=float).reshape(dec.nplus)
    slip = np.zeros(0) if slip is None else np.asarray(slip, dtype=float)
    return LayerSolution(dec, z0, slip, f_e, f_o)


def _amplitudes(sol: LayerSolution, y) -> np.ndarray:
    ys = np.asarray(y, dtype=float)
    if np.any(ys < 0):
        raise InvalidArgumentError("the half-space solution is defined for y >= 0 only")
    lam = sol.decomposition.Lam
    return np.exp(-np.multiply.outer(ys, 1.0 / lam)) * sol.z0


def evaluate_solution(sol: LayerSolution, y):
    """``w(y)``; a scalar ``y`` gives a vector, an array gives one row per point."""
    return _amplitudes(sol, y) @ sol.decomposition.modes.T


def evaluate_derivative(sol: LayerSolution, y):
    amp = _amplitudes(sol, y) / sol.decomposition.Lam
    return -amp @ sol.decomposition.modes.T


def solve_halfspace(dec: Decomposition, B: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Solve ``B V3 T z0 = g`` for the modal amplitudes ``z0``."""
    g = np.asarray(g, dtype=float)
    if dec.nplus == 0:
        if np.linalg.norm(g) > 0:
            raise InconsistentDataError("no decaying modes but boundary data is nonzero")
        return np.zeros(0)
    BVT = np.asarray(B, dtype=float) @ dec.V3 @ dec.T
    if numerical_rank(BVT) != dec.nplus:
        raise IllPosedBoundaryError(f"rank(B V3 T) < n_plus = {dec.nplus}")
    z0, *_ = np.linalg.lstsq(BVT, g, rcond=None)
    if np.linalg.norm(BVT @ z0 - g) > 1e-9 * np.linalg.norm(g):
        raise InconsistentDataError("boundary data is not in the span of B V3 T")
    return z0
