"""Maxwell-type wall conditions for the half-space moment system.

The diffuse-specular wall gives ``m`` conditions

    M (w_o(0) + f_o) = -b(chi) S (w_e(0) + f_e)

of which only ``n`` can be imposed.  Two ways of choosing them are offered:

``new``  left-multiply by ``M^T S^-1``:  ``H (w_o + f_o) = -b M^T (w_e + f_e)``
         with ``H = M^T S^-1 M``; uniquely solvable for ``chi`` in (0, 1].
``grad`` keep the first ``n`` rows; no solvability guarantee.

The components of ``f_e`` inside span(G_e) (slip velocity, temperature jump,
...) are unknowns solved jointly with the modal amplitudes ``z(0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as sla

from .assembly import MomentSystem
from .errors import (
    IllPosedBoundaryError,
    InconsistentDataError,
    InvalidArgumentError,
    UnsupportedConfigurationError,
)
from .halfspace import Decomposition, LayerSolution, make_solution, solve_halfspace
from .linalg import numerical_rank

BC_KINDS = ("new", "grad")


def accommodation_factor(chi: float) -> float:
    """``b(chi) = 2 chi / (2 - chi) / sqrt(2 pi)``."""
    return 2.0 * chi / (2.0 - chi) / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True, eq=False)
class BoundarySpec:
    chi: float
    f_e: np.ndarray
    f_o: np.ndarray
    kind: str = "new"

    def __post_init__(self):
        if self.kind not in BC_KINDS:
            raise InvalidArgumentError(f"unknown boundary condition {self.kind!r}")
        if not 0.0 <= self.chi <= 1.0:
            raise InvalidArgumentError(f"accommodation coefficient must lie in [0, 1], got {self.chi}")
        object.__setattr__(self, "f_e", np.asarray(self.f_e, dtype=float))
        object.__setattr__(self, "f_o", np.asarray(self.f_o, dtype=float))

    @property
    def b(self) -> float:
        return accommodation_factor(self.chi)


@dataclass(frozen=True, eq=False)
class BoundarySystem:
    """``lhs [slip; z0] = rhs`` with ``n`` rows and ``p1 + n_plus`` columns."""

    lhs: np.ndarray
    rhs: np.ndarray
    B: np.ndarray  # n x (m+n) operator acting on w(0)
    g: np.ndarray  # B w(0) = g once the slip is known
    f_e_given: np.ndarray  # (I - G_e G_e^T) f_e
    spec: BoundarySpec
    decomposition: Decomposition

    @property
    def n_slip(self) -> int:
        return self.decomposition.p1


def _check_chi(spec: BoundarySpec) -> None:
    if not 0.0 < spec.chi <= 1.0:
        raise InvalidArgumentError(f"slip unknowns need chi in (0, 1], got {spec.chi}")


def _check_shapes(system: MomentSystem, spec: BoundarySpec) -> None:
    if spec.f_e.shape != (system.m,) or spec.f_o.shape != (system.n,):
        raise InvalidArgumentError(
            f"boundary data shapes {spec.f_e.shape}, {spec.f_o.shape} do not match m={system.m}, n={system.n}"
        )


def flux_metric(system: MomentSystem) -> np.ndarray:
    """``H = M^T S^-1 M`` (symmetric positive definite)."""
    factor = sla.cho_factor(system.S, lower=True)
    H = system.M.T @ sla.cho_solve(factor, system.M)
    return 0.5 * (H + H.T)


def _assemble(B_e, B_o, dec, spec):
    """Shared layout: columns for the slip unknowns, then for ``z(0)``."""
    G_e = dec.G_e
    f_e_given = spec.f_e - G_e @ (G_e.T @ spec.f_e)
    B = np.hstack([B_e, B_o])
    W0 = dec.modes
    lhs = np.hstack([B_e @ G_e, B @ W0])
    g = -B_o @ spec.f_o - B_e @ f_e_given
    return B, lhs, g.copy(), g, f_e_given


def build_new_bc(
    system: MomentSystem, dec: Decomposition, spec: BoundarySpec, H: Optional[np.ndarray] = None
) -> BoundarySystem:
    """``H (w_o + f_o) = -b M^T (w_e + f_e)``; ``H`` defaults to ``M^T S^-1 M``.

    Any other symmetric positive definite ``H`` may be passed instead.
    """
    if spec.kind != "new":
        raise InvalidArgumentError("spec is not a 'new' boundary condition")
    if dec.r2 != 0:
        raise UnsupportedConfigurationError(f"r2 = {dec.r2}; the slip solve needs r2 = 0")
    _check_chi(spec)
    _check_shapes(system, spec)
    if H is None:
        H = flux_metric(system)
    B_e = spec.b * system.M.T
    B, lhs, rhs, g, f_e_given = _assemble(B_e, H, dec, spec)
    return BoundarySystem(lhs, rhs, B, g, f_e_given, spec, dec)


def build_grad_bc(system: MomentSystem, dec: Decomposition, spec: BoundarySpec) -> BoundarySystem:
    """First ``n`` rows of the diffuse-specular conditions, ``E = [I_n, 0]``."""
    if spec.kind != "grad":
        raise InvalidArgumentError("spec is not a 'grad' boundary condition")
    _check_chi(spec)
    _check_shapes(system, spec)
    n = system.n
    B_e = spec.b * system.S[:n, :]
    B_o = system.M[:n, :]
    B, lhs, rhs, g, f_e_given = _assemble(B_e, B_o, dec, spec)
    return BoundarySystem(lhs, rhs, B, g, f_e_given, spec, dec)


def build_bc(system: MomentSystem, dec: Decomposition, spec: BoundarySpec) -> BoundarySystem:
    if spec.kind == "new":
        return build_new_bc(system, dec, spec)
    return build_grad_bc(system, dec, spec)


def solve_boundary(bsys: BoundarySystem) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(slip, z0)``; raises if the boundary system is singular."""
    lhs, rhs = bsys.lhs, bsys.rhs
    cols = lhs.shape[1]
    if cols and numerical_rank(lhs) < cols:
        raise IllPosedBoundaryError(
            f"boundary system has rank {numerical_rank(lhs)} < {cols} ({bsys.spec.kind} condition)"
        )
    if cols == 0:
        x = np.zeros(0)
    elif lhs.shape[0] == cols:
        x = np.linalg.solve(lhs, rhs)
    else:
        x, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
    if np.linalg.norm(lhs @ x - rhs) > 1e-9 * max(np.linalg.norm(rhs), 1e-300):
        raise InconsistentDataError("boundary data is incompatible with the boundary operator")
    return x[: bsys.n_slip], x[bsys.n_slip :]


def solve_layer(system: MomentSystem, dec: Decomposition, spec: BoundarySpec) -> LayerSolution:
    """Build the boundary system for ``spec``, solve it and package the solution."""
    bsys = build_bc(system, dec, spec)
    slip, z0 = solve_boundary(bsys)
    f_e = bsys.f_e_given + dec.G_e @ slip
    return make_solution(dec, z0, slip, f_e=f_e, f_o=spec.f_o)


def solve_specular(system: MomentSystem, dec: Decomposition, f_o: np.ndarray) -> LayerSolution:
    """Purely specular wall (``b = 0``): ``H (w_o(0) + f_o) = 0``.

    Needs ``H f_o`` in the span of the modal boundary operator; the slip
    components stay undetermined and are reported empty.
    """
    if dec.r2 != 0:
        raise UnsupportedConfigurationError(f"r2 = {dec.r2}; the slip solve needs r2 = 0")
    f_o = np.asarray(f_o, dtype=float)
    H = flux_metric(system)
    B = np.hstack([np.zeros((system.n, system.m)), H])
    z0 = solve_halfspace(dec, B, -H @ f_o)
    return make_solution(dec, z0, None, f_o=f_o)


def boundary_residual(system: MomentSystem, sol: LayerSolution, spec: BoundarySpec, projected: bool = False) -> float:
    """Norm of the diffuse-specular wall conditions at ``y = 0``.

    ``projected=False`` checks all ``m`` rows, ``projected=True`` the ``n``
    rows obtained after multiplying by ``M^T S^-1``.
    """
    w0 = sol(0.0)
    m = system.m
    odd = system.M @ (w0[m:] + sol.f_o)
    even = spec.b * system.S @ (w0[:m] + sol.f_e)
    res = odd + even
    if projected:
        res = system.M.T @ np.linalg.solve(system.S, res)
    return float(np.linalg.norm(res))


def wall_maxwellian_moments(m_max: int, u_w: float, theta_w: float) -> np.ndarray:
    """1-D Hermite moments ``J_0..J_m_max`` of a wall Maxwellian with velocity ``u_w``."""
    if not theta_w > 0:
        raise InvalidArgumentError(f"wall temperature must be positive, got {theta_w}")
    if m_max < 0:
        raise InvalidArgumentError("m_max must be non-negative")
    J = np.zeros(m_max + 1)
    J[0] = 1.0
    if m_max >= 1:
        J[1] = u_w
    for k in range(2, m_max + 1):
        J[k] = ((theta_w - 1.0) * math.sqrt(k - 1) * J[k - 2] + u_w * J[k - 1]) / math.sqrt(k)
    return J
