"""Assembly of the transport, collision and half-range flux matrices.

All matrices are dense and indexed by positions in an :class:`IndexSet`
(even-parity indices first).  For an index set with ``m`` even and ``n`` odd
members the transport matrix is ``[[0, M], [M^T, 0]]`` with ``M`` of shape
``m x n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, TextIO

import numpy as np

from .errors import AssemblyError, InvalidArgumentError
from .indices import NORMAL_AXIS, IndexSet, MultiIndex, validate_c1
from .linalg import numerical_rank


@dataclass(frozen=True)
class CollisionModel:
    """BGK (``prandtl == 1``) or linearized Shakhov relaxation."""

    kind: str = "bgk"
    prandtl: float = 1.0

    def __post_init__(self):
        if self.kind not in ("bgk", "shakhov"):
            raise InvalidArgumentError(f"unknown collision model {self.kind!r}")
        if not self.prandtl > 0:
            raise InvalidArgumentError(f"Prandtl number must be positive, got {self.prandtl}")
        if self.kind == "bgk" and self.prandtl != 1.0:
            raise InvalidArgumentError("the BGK model has Pr = 1")

    @classmethod
    def bgk(cls) -> "CollisionModel":
        return cls("bgk", 1.0)

    @classmethod
    def shakhov(cls, prandtl: float = 2.0 / 3.0) -> "CollisionModel":
        return cls("shakhov", prandtl)


# user hook for other linearized collision operators: index set -> symmetric PSD matrix
CollisionHook = Callable[[IndexSet], np.ndarray]


@dataclass(frozen=True, eq=False)
class MomentSystem:
    index_set: IndexSet
    A: np.ndarray
    M: np.ndarray
    Q: np.ndarray
    S: np.ndarray
    model: Optional[CollisionModel]

    @property
    def m(self) -> int:
        return self.index_set.m

    @property
    def n(self) -> int:
        return self.index_set.n

    @property
    def Q_e(self) -> np.ndarray:
        return self.Q[: self.m, : self.m]

    @property
    def Q_o(self) -> np.ndarray:
        return self.Q[self.m :, self.m :]


def hermite_zero_values(K: int) -> np.ndarray:
    """Values ``phi_k(0)`` of the orthonormal 1-D Hermite functions, k = 0..K."""
    if K < 0:
        raise InvalidArgumentError("K must be non-negative")
    z = np.zeros(K + 1)
    z[0] = 1.0
    for k in range(1, K):
        z[k + 1] = -math.sqrt(k) * z[k - 1] / math.sqrt(k + 1)
    return z


def halfflux_1d(a: int, b: int, z: np.ndarray) -> float:
    """Closed-form half-range flux entry for even 1-D orders ``a`` and ``b``."""
    if a % 2 or b % 2:
        raise AssemblyError(f"half-range flux is only defined for even orders, got ({a}, {b})")
    return (a + b + 1) / (1 - (a - b) ** 2) * z[a] * z[b]


def _check_valid(index_set: IndexSet) -> None:
    if not validate_c1(index_set):
        raise InvalidArgumentError("index set is not chain-closed")


def assemble_transport(index_set: IndexSet) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(A, M)`` for the normal-direction streaming operator."""
    _check_valid(index_set)
    size, m = len(index_set), index_set.m
    A = np.zeros((size, size))
    for row, alpha in enumerate(index_set.indices):
        k = alpha.normal
        down = alpha.shifted(NORMAL_AXIS, -1)
        if down is not None and down in index_set:
            A[row, index_set.position(down)] = math.sqrt(k)
        up = alpha.shifted(NORMAL_AXIS, 1)
        if up in index_set:
            A[row, index_set.position(up)] = math.sqrt(k + 1)
    return A, A[:m, m:].copy()


def _twice_unit_axis(alpha: MultiIndex) -> Optional[int]:
    """Axis i if ``alpha == 2 e_i``."""
    if alpha.norm == 2 and max(alpha) == 2:
        return alpha.index(2)
    return None


def _heat_flux_pair(alpha: MultiIndex) -> Optional[tuple[int, int]]:
    """(i, j) if ``alpha == e_i + 2 e_j`` (``3 e_i`` gives ``(i, i)``)."""
    if alpha.norm != 3:
        return None
    if max(alpha) == 3:
        i = alpha.index(3)
        return i, i
    if 2 in alpha and 1 in alpha:
        return alpha.index(1), alpha.index(2)
    return None


def assemble_collision_shakhov(index_set: IndexSet, prandtl: float) -> np.ndarray:
    """Linearized Shakhov collision matrix restricted to ``index_set``.

    Rows and columns of moments with norm at most one (mass and momentum)
    vanish.  The stress block carries the trace projection and the heat-flux
    block the rank-one Prandtl correction; everything else relaxes at unit rate.
    ``prandtl == 1`` yields the BGK matrix.
    """
    if not prandtl > 0:
        raise InvalidArgumentError(f"Prandtl number must be positive, got {prandtl}")
    _check_valid(index_set)
    D = index_set.dim
    size = len(index_set)
    Q = np.zeros((size, size))
    indices = index_set.indices
    stress = {}
    heat = {}
    for pos, alpha in enumerate(indices):
        if alpha.norm <= 1:
            continue
        axis = _twice_unit_axis(alpha)
        pair = _heat_flux_pair(alpha)
        if axis is not None:
            stress[pos] = axis
        elif pair is not None:
            heat[pos] = pair
        else:
            Q[pos, pos] = 1.0
    for p1, i in stress.items():
        for p2, j in stress.items():
            Q[p1, p2] = (i == j) - 1.0 / D
    # the Prandtl correction normalizes by D + 2, the squared length of the heat-flux vector
    corr = (1.0 - prandtl) / (D + 2)
    for p1, (i, j) in heat.items():
        for p2, (i2, k) in heat.items():
            if i2 != i:
                continue
            Q[p1, p2] = (j == k) - corr * math.sqrt(1 + 2 * (i == j)) * math.sqrt(1 + 2 * (i == k))
    return Q


def assemble_collision(index_set: IndexSet, model: CollisionModel) -> np.ndarray:
    return assemble_collision_shakhov(index_set, model.prandtl)


def assemble_halfflux(index_set: IndexSet) -> np.ndarray:
    """Half-range flux matrix ``S`` on the even part of ``index_set``."""
    _check_valid(index_set)
    even = index_set.even
    top = max((a.normal for a in even), default=0)
    z = hermite_zero_values(top + 1)
    S = np.zeros((len(even), len(even)))
    for r, alpha in enumerate(even):
        tangential = alpha[:NORMAL_AXIS] + alpha[NORMAL_AXIS + 1 :]
        for c, beta in enumerate(even):
            if beta[:NORMAL_AXIS] + beta[NORMAL_AXIS + 1 :] == tangential:
                S[r, c] = halfflux_1d(alpha.normal, beta.normal, z)
    return S


def assemble_system(
    index_set: IndexSet,
    model: Optional[CollisionModel] = None,
    collision: Optional[CollisionHook] = None,
) -> MomentSystem:
    """Assemble and verify ``A``, ``Q`` and ``S``.

    ``collision`` replaces the relaxation-model matrix by a user-supplied
    symmetric positive semi-definite matrix (e.g. a tabulated linearized
    Boltzmann operator).  Raises :class:`AssemblyError` when a structural
    requirement fails.
    """
    if model is None and collision is None:
        model = CollisionModel.bgk()
    A, M = assemble_transport(index_set)
    if collision is not None:
        Q = np.asarray(collision(index_set), dtype=float)
        if Q.shape != A.shape:
            raise AssemblyError(f"collision hook returned shape {Q.shape}, expected {A.shape}")
    else:
        Q = assemble_collision(index_set, model)
    S = assemble_halfflux(index_set)
    system = MomentSystem(index_set=index_set, A=A, M=M, Q=Q, S=S, model=model)
    verify_system(system)
    return system


def verify_system(system: MomentSystem) -> None:
    m, n = system.m, system.n
    A, Q = system.A, system.Q
    if m < n:
        raise AssemblyError(f"need m >= n, got m={m}, n={n}")
    if n and numerical_rank(system.M) != n:
        raise AssemblyError("rank(M) = n fails: the streaming block is column-rank deficient")
    if not np.allclose(Q, Q.T, atol=1e-14):
        raise AssemblyError("Q is not symmetric")
    if np.any(Q[:m, m:]) or np.any(Q[m:, :m]):
        raise AssemblyError("Q is not block diagonal in the even/odd split")
    if len(Q) and np.linalg.eigvalsh(Q).min() < -1e-12:
        raise AssemblyError("Q is not positive semi-definite")
    if len(A) and numerical_rank(np.vstack([A, Q])) != len(A):
        raise AssemblyError("Null(A) and Null(Q) intersect nontrivially")
    if m:
        try:
            np.linalg.cholesky(system.S)
        except np.linalg.LinAlgError:
            raise AssemblyError("S is not symmetric positive definite") from None


def write_matrix(stream: TextIO, mat: np.ndarray) -> None:
    """Dump ``mat`` as ``rows cols`` then one row per line, 17 significant digits."""
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    rows, cols = mat.shape
    stream.write(f"{rows} {cols}\n")
    for row in mat:
        stream.write(" ".join(f"{x:.17g}" for x in row) + "\n")


def read_matrix(stream: TextIO) -> np.ndarray:
    rows, cols = (int(t) for t in stream.readline().split())
    values = np.array(stream.read().split(), dtype=float)
    if values.size != rows * cols:
        raise InvalidArgumentError(f"expected {rows * cols} entries, found {values.size}")
    return values.reshape(rows, cols)
