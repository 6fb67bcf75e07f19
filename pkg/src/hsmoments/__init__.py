"""Linear half-space moment systems for Knudsen layers.

Assemble Hermite moment systems on chain-closed index sets, solve them in
closed form with Maxwell-type wall conditions, and extract viscous slip,
thermal slip and temperature jump coefficients.
"""

__version__ = "0.1.0"

from .assembly import CollisionModel, MomentSystem, assemble_system
from .boundary import BoundarySpec, build_grad_bc, build_new_bc, solve_boundary, solve_layer
from .halfspace import Decomposition, LayerSolution, decompose, evaluate_solution
from .indices import IndexSet, MultiIndex, build_index_set, compare_indices, validate_c1
from .problems import ProblemConfig, ProblemResult, run_problem, sweep_orders

__all__ = [
    "BoundarySpec",
    "CollisionModel",
    "Decomposition",
    "IndexSet",
    "LayerSolution",
    "MomentSystem",
    "MultiIndex",
    "ProblemConfig",
    "ProblemResult",
    "assemble_system",
    "build_grad_bc",
    "build_index_set",
    "build_new_bc",
    "compare_indices",
    "decompose",
    "evaluate_solution",
    "run_problem",
    "solve_boundary",
    "solve_layer",
    "sweep_orders",
    "validate_c1",
]
