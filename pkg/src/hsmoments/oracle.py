"""Independent checks: half-range quadrature and ODE residuals.

Nothing here reuses the assembly code path.  Hermite functions are
evaluated by their three-term recursion and integrals by Gauss-Laguerre
quadrature after the substitution ``t = x^2 / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numpy.polynomial.laguerre import laggauss

from .errors import InvalidArgumentError


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes/weights with ``sum(w * f(x)) ~ int_0^inf f(x) exp(-x^2/2) dx``.

    Exact for ``f(x) = x^(2k+1)`` with ``k <= 2 * order - 1``, i.e. for the
    odd integrands produced by ``|x|`` times an even polynomial.
    """

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))


def half_range_rule(order: int = 64) -> QuadratureRule:
    if order < 1:
        raise InvalidArgumentError("quadrature order must be positive")
    t, wt = laggauss(order)
    x = np.sqrt(2.0 * t)
    # x dx = dt, so int f(x) e^{-x^2/2} dx = int f(x)/x e^{-t} dt
    return QuadratureRule(order, x, wt / x)


def hermite_functions(kmax: int, x: np.ndarray) -> np.ndarray:
    """Rows ``phi_0..phi_kmax`` (orthonormal w.r.t. the standard Gaussian) at ``x``."""
    x = np.asarray(x, dtype=float)
    out = np.zeros((kmax + 1,) + x.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = x
    for k in range(1, kmax):
        out[k + 1] = (x * out[k] - math.sqrt(k) * out[k - 1]) / math.sqrt(k + 1)
    return out


def quadrature_S_entry(a: int, b: int, rule: QuadratureRule | None = None) -> float:
    """``sqrt(2 pi)/2 * <|xi| omega phi_a phi_b>`` in one dimension, by quadrature."""
    if a % 2 or b % 2 or a < 0 or b < 0:
        raise InvalidArgumentError(f"orders must be even and non-negative, got ({a}, {b})")
    rule = rule or half_range_rule()
    if (a + b) // 2 > 2 * rule.order - 1:
        raise InvalidArgumentError(f"quadrature order {rule.order} too low for ({a}, {b})")
    phi = hermite_functions(max(a, b), rule.nodes)
    integrand = rule.nodes * phi[a] * phi[b]
    # the integrand is even: the full line is twice the half line, and omega carries 1/sqrt(2 pi)
    return rule.integrate(integrand)


def residual_norm(system, sol, ys: Iterable[float]) -> float:
    """``max_y ||A w'(y) + Q w(y)||`` with the analytic derivative."""
    ys = np.asarray(list(ys), dtype=float)
    if ys.size == 0:
        return 0.0
    w = sol(ys)
    dw = sol.derivative(ys)
    res = dw @ system.A.T + w @ system.Q.T
    return float(np.max(np.linalg.norm(res, axis=1)))


def max_state_norm(sol, ys: Iterable[float]) -> float:
    ys = np.asarray(list(ys), dtype=float)
    if ys.size == 0:
        return 0.0
    return float(np.max(np.linalg.norm(sol(ys), axis=1)))
