"""Drivers for Kramers' problem, thermal slip and temperature jump (D = 3).

Each run assembles the reduced moment system for its index set, solves the
layer with a Maxwell-type wall condition and extracts the slip/jump
coefficient together with the normalized defect profile.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .assembly import CollisionModel, MomentSystem, assemble_system
from .boundary import BC_KINDS, BoundarySpec, solve_layer
from .errors import ConfigurationError, InconsistencyError, InvalidArgumentError
from .halfspace import Decomposition, LayerSolution, decompose
from .indices import IndexSet, build_index_set

DIM = 3
PROBLEMS = ("kramers", "thermal-slip", "temperature-jump")
VISCOSITY = math.sqrt(2.0) / 2.0  # mu, shared by every Prandtl number
CONSERVATION_TOL = 1e-12

COEFFICIENT_NAMES = {"kramers": "eta", "thermal-slip": "Pr*eta_t", "temperature-jump": "zeta"}
EXPECTED_COUNTS = {
    "kramers": (1, 0, 1, 0),
    "thermal-slip": (1, 0, 1, 0),
    "temperature-jump": (2, 1, 1, 0),
}


def _idx(*comps) -> tuple:
    return tuple(comps)


def kramers_index_set(order: int) -> IndexSet:
    """Chains through ``e1``, ``3 e1`` and ``e1 + 2 e3`` (also used for thermal slip)."""
    return build_index_set([_idx(1, 0, 0), _idx(3, 0, 0), _idx(1, 0, 2)], order, DIM)


def temperature_jump_index_set(order: int) -> IndexSet:
    """Chains through ``0``, ``2 e1`` and ``2 e3``."""
    return build_index_set([_idx(0, 0, 0), _idx(2, 0, 0), _idx(0, 0, 2)], order, DIM)


@dataclass(frozen=True)
class ProblemConfig:
    kind: str = "kramers"
    order: int = 12
    model: CollisionModel = field(default_factory=CollisionModel.bgk)
    chi: float = 1.0
    drive: float = -1.0
    bc: str = "new"
    samples: int = 200
    ymax: Optional[float] = None  # in scaled units (mu*y or lambda*y)

    def __post_init__(self):
        if self.kind not in PROBLEMS:
            raise InvalidArgumentError(f"unknown problem {self.kind!r}")
        if self.order < 3:
            raise InvalidArgumentError(f"moment order must be at least 3, got {self.order}")
        if not 0.0 < self.chi <= 1.0:
            raise InvalidArgumentError(f"chi must lie in (0, 1], got {self.chi}")
        if self.drive == 0:
            raise InvalidArgumentError("drive must be nonzero")
        if self.bc not in BC_KINDS:
            raise InvalidArgumentError(f"unknown boundary condition {self.bc!r}")
        if self.samples < 1:
            raise InvalidArgumentError("need at least one profile sample")
        if self.ymax is not None and not self.ymax > 0:
            raise InvalidArgumentError("ymax must be positive")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["model"] = {"kind": self.model.kind, "prandtl": self.model.prandtl}
        return d


@dataclass(eq=False)
class ProblemResult:
    config: ProblemConfig
    coefficient_name: str
    coefficient: float
    profile: np.ndarray  # columns: scaled y, defect
    profile_header: tuple[str, str]
    solution: LayerSolution
    system: MomentSystem
    counts: dict
    extras: dict = field(default_factory=dict)
    ygrid: Optional[np.ndarray] = None  # physical y of the profile rows

    @property
    def decomposition(self) -> Decomposition:
        return self.solution.decomposition


@lru_cache(maxsize=64)
def prepare(kind: str, order: int, model: CollisionModel) -> tuple[MomentSystem, Decomposition]:
    """Assemble and decompose once per (problem, order, model); results are immutable."""
    if kind == "temperature-jump":
        index_set = temperature_jump_index_set(order)
    else:
        index_set = kramers_index_set(order)
    system = assemble_system(index_set, model)
    dec = decompose(system)
    got = (dec.p1, dec.p2, dec.r1, dec.r2)
    if got != EXPECTED_COUNTS[kind]:
        raise ConfigurationError(f"{kind}: (p1, p2, r1, r2) = {got}, expected {EXPECTED_COUNTS[kind]}")
    return system, dec


def default_ygrid(dec: Decomposition, scale: float, cfg: ProblemConfig) -> np.ndarray:
    """Uniform grid in physical ``y``; the upper end lets the slowest mode decay to 1e-8."""
    if cfg.ymax is not None:
        ymax = cfg.ymax / scale
    else:
        ymax = dec.Lam[0] * math.log(1e8) if dec.nplus else 1.0
    return np.linspace(0.0, ymax, cfg.samples)


def _check_zero(label: str, values: np.ndarray, scale: float) -> float:
    worst = float(np.max(np.abs(values))) if values.size else 0.0
    if worst > CONSERVATION_TOL * max(scale, 1.0):
        raise InconsistencyError(f"{label} should vanish identically, max |value| = {worst:.3e}")
    return worst


def _solve(cfg: ProblemConfig, f_e: np.ndarray, f_o: np.ndarray):
    system, dec = prepare(cfg.kind, cfg.order, cfg.model)
    sol = solve_layer(system, dec, BoundarySpec(cfg.chi, f_e, f_o, cfg.bc))
    return system, dec, sol


def run_kramers(cfg: ProblemConfig) -> ProblemResult:
    if cfg.kind != "kramers":
        raise InvalidArgumentError("config is not a Kramers problem")
    system, _ = prepare(cfg.kind, cfg.order, cfg.model)
    I = system.index_set
    sigma = cfg.drive
    f_e = np.zeros(system.m)
    f_o = np.zeros(system.n)
    f_o[I.odd_position((1, 1, 0))] = sigma
    system, dec, sol = _solve(cfg, f_e, f_o)

    u_slip = sol.f_e[I.even_position((1, 0, 0))]
    eta = -VISCOSITY * u_slip / sigma

    ys = default_ygrid(dec, VISCOSITY, cfg)
    w = sol(ys)
    u_layer = w[:, I.position((1, 0, 0))]
    scale = float(np.max(np.abs(w)))
    extras = {
        "u1_B": float(u_slip),
        "max_sigma12_K": _check_zero("sigma_12,K", w[:, I.position((1, 1, 0))], scale),
        "max_velocity_relation": _check_zero(
            "u_1,K + sqrt(2) w[e1+2e2]", u_layer + math.sqrt(2.0) * w[:, I.position((1, 2, 0))], scale
        ),
    }
    profile = np.column_stack([VISCOSITY * ys, VISCOSITY * u_layer / sigma])
    return ProblemResult(cfg, "eta", float(eta), profile, ("mu_y", "u_d"), sol, system, dec.counts(), extras, ys)


def thermal_conductivity(model: CollisionModel) -> float:
    return math.sqrt(2.0) / 2.0 / model.prandtl


def run_thermal_slip(cfg: ProblemConfig) -> ProblemResult:
    """Reports ``Pr * eta_t`` as the coefficient; ``eta_t`` is kept in ``extras``."""
    if cfg.kind != "thermal-slip":
        raise InvalidArgumentError("config is not a thermal slip problem")
    system, _ = prepare(cfg.kind, cfg.order, cfg.model)
    I = system.index_set
    q = cfg.drive
    f_e = np.zeros(system.m)
    f_e[I.even_position((3, 0, 0))] = math.sqrt(3.0) * q
    f_e[I.even_position((1, 2, 0))] = q
    f_e[I.even_position((1, 0, 2))] = q
    f_o = np.zeros(system.n)
    system, dec, sol = _solve(cfg, f_e, f_o)

    lam = thermal_conductivity(cfg.model)
    u_slip = sol.f_e[I.even_position((1, 0, 0))]
    eta_t = -0.5 * lam * u_slip / q
    pr_eta_t = cfg.model.prandtl * eta_t

    ys = default_ygrid(dec, VISCOSITY, cfg)
    w = sol(ys)
    u_layer = w[:, I.position((1, 0, 0))]
    scale = float(np.max(np.abs(w)))
    extras = {
        "u1_B": float(u_slip),
        "eta_t": float(eta_t),
        "max_sigma12_K": _check_zero("sigma_12,K", w[:, I.position((1, 1, 0))], scale),
    }
    profile = np.column_stack([VISCOSITY * ys, 0.5 * lam * u_layer / q])
    return ProblemResult(
        cfg, "Pr*eta_t", float(pr_eta_t), profile, ("mu_y", "u_d"), sol, system, dec.counts(), extras, ys
    )


def run_temperature_jump(cfg: ProblemConfig) -> ProblemResult:
    if cfg.kind != "temperature-jump":
        raise InvalidArgumentError("config is not a temperature jump problem")
    system, _ = prepare(cfg.kind, cfg.order, cfg.model)
    I = system.index_set
    q = cfg.drive
    f_e = np.zeros(system.m)  # entirely inside span(G_e): solved for
    f_o = np.zeros(system.n)
    f_o[I.odd_position((2, 1, 0))] = q
    f_o[I.odd_position((0, 1, 2))] = q
    f_o[I.odd_position((0, 3, 0))] = math.sqrt(3.0) * q
    system, dec, sol = _solve(cfg, f_e, f_o)

    stress = [I.even_position(a) for a in ((2, 0, 0), (0, 2, 0), (0, 0, 2))]
    jumps = sol.f_e[stress]
    theta_B = math.sqrt(2.0) * float(np.mean(jumps))
    lam = thermal_conductivity(cfg.model)
    zeta = -lam * theta_B / math.sqrt(2.0) / q

    ys = default_ygrid(dec, lam, cfg)
    w = sol(ys)
    theta_K = math.sqrt(2.0) * w[:, stress].sum(axis=1) / 3.0
    scale = float(np.max(np.abs(w)))
    heat = math.sqrt(3.0) * w[:, I.position((0, 3, 0))] + w[:, I.position((2, 1, 0))] + w[:, I.position((0, 1, 2))]
    extras = {
        "theta_B": theta_B,
        "rho_B": float(sol.f_e[I.even_position((0, 0, 0))]),
        "max_jump_spread": float(np.ptp(jumps)),
        "max_u2_K": _check_zero("u_2,K", w[:, I.position((0, 1, 0))], scale),
        "max_density_relation": _check_zero(
            "rho_K + sqrt(2) w[2e2]", w[:, I.position((0, 0, 0))] + math.sqrt(2.0) * w[:, I.position((0, 2, 0))], scale
        ),
        "max_q2_K": _check_zero("q_2,K", heat / 5.0, scale),
    }
    profile = np.column_stack([lam * ys, lam / math.sqrt(2.0) * theta_K / q])
    return ProblemResult(
        cfg, "zeta", float(zeta), profile, ("lambda_y", "theta_d"), sol, system, dec.counts(), extras, ys
    )


RUNNERS = {
    "kramers": run_kramers,
    "thermal-slip": run_thermal_slip,
    "temperature-jump": run_temperature_jump,
}


def run_problem(cfg: ProblemConfig) -> ProblemResult:
    return RUNNERS[cfg.kind](cfg)


@dataclass(frozen=True)
class SweepRow:
    order: int
    coefficient: float
    log2_error: Optional[float] = None


def sweep_orders(cfg: ProblemConfig, orders: Sequence[int], reference: Optional[float] = None) -> list[SweepRow]:
    """Coefficient for each order; ``log2|coef - reference|`` when a reference is given."""
    if not len(orders):
        raise InvalidArgumentError("need at least one order")
    rows = []
    for order in orders:
        coef = run_problem(replace(cfg, order=int(order))).coefficient
        err = None
        if reference is not None:
            diff = abs(coef - reference)
            err = math.log2(diff) if diff > 0 else float("-inf")
        rows.append(SweepRow(int(order), coef, err))
    return rows


def fit_log2_slope(rows: Sequence[SweepRow]) -> float:
    """Least-squares slope of ``log2 error`` against ``log2 M``."""
    pts = [(math.log2(r.order), r.log2_error) for r in rows if r.log2_error is not None and math.isfinite(r.log2_error)]
    if len(pts) < 2:
        raise InvalidArgumentError("need at least two finite error values")
    x, y = np.array(pts).T
    return float(np.polyfit(x, y, 1)[0])

