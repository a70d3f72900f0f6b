"""
Optimal agent position inside its own sector.

For the quadratic service cost f(p, q) = |p - q|^2 the optimum is the
sector's density-weighted centroid. Any other differentiable cost goes
through gradient descent with backtracking, started from the centroid.
"""
from dataclasses import dataclass
from typing import Callable, Optional
import logging

import numpy as np

from Rotary_Coverage_Sim.field.integrals import (
    SectorIntegrals, SectorSamples, sector_integrals, sector_samples, DEFAULT_QUADRATURE,
)
from Rotary_Coverage_Sim.utils.errors import EmptySector, NoConvergence

logger = logging.getLogger(__name__)

GRADIENT_TOL = 1e-8
MAX_ITERATIONS = 10_000


@dataclass(frozen=True)
class QuadraticCost:
    name: str = "quadratic"

    def value(self, p, x, y):
        return (p[0] - x) ** 2 + (p[1] - y) ** 2

    def gradient(self, p, x, y):
        return np.column_stack([2.0 * (p[0] - x), 2.0 * (p[1] - y)])


@dataclass(frozen=True)
class GenericCost:
    """A service cost f(p, q) with its gradient in p.

    ``f(p, x, y)`` returns one value per sample point, ``grad_f(p, x, y)``
    an array of shape (len(x), 2).
    """

    f: Callable
    grad_f: Callable
    name: str = "generic"

    def value(self, p, x, y):
        return np.asarray(self.f(p, x, y), dtype=float)

    def gradient(self, p, x, y):
        return np.asarray(self.grad_f(p, x, y), dtype=float).reshape(-1, 2)


QUADRATIC = QuadraticCost()


def cost_by_name(name: str):
    if name == "quadratic":
        return QUADRATIC
    raise ValueError(f"unknown cost '{name}'")


def local_cost(p, samples: SectorSamples, cost) -> float:
    """J over one sector: integral of f(p, q) * rho(q)."""
    return float(np.sum(samples.weights * samples.rho * cost.value(p, samples.x, samples.y)))


def local_cost_gradient(p, samples: SectorSamples, cost) -> np.ndarray:
    """Gradient of the sector cost in p; 2 m (p - c) for the quadratic cost."""
    wr = (samples.weights * samples.rho)[:, None]
    return np.sum(wr * cost.gradient(p, samples.x, samples.y), axis=0)


def hessian_rank(p, samples: SectorSamples, cost, step: float = 1e-6) -> int:
    """Numerical rank of the sector-cost Hessian at p, by central differences of the gradient."""
    p = np.asarray(p, dtype=float)
    columns = []
    for k in range(2):
        e = np.zeros(2)
        e[k] = step
        columns.append((local_cost_gradient(p + e, samples, cost)
                        - local_cost_gradient(p - e, samples, cost)) / (2.0 * step))
    hessian = 0.5 * (np.column_stack(columns) + np.column_stack(columns).T)
    scale = max(float(np.max(np.abs(hessian))), 1e-300)
    return int(np.linalg.matrix_rank(hessian, tol=1e-8 * scale))


def _descend(p0: np.ndarray, samples: SectorSamples, cost, mass: float) -> np.ndarray:
    p = p0.copy()
    value = local_cost(p, samples, cost)
    base = 1.0 / max(mass, 1e-300)
    step = base
    for iteration in range(MAX_ITERATIONS):
        grad = local_cost_gradient(p, samples, cost)
        norm2 = float(grad @ grad)
        if np.sqrt(norm2) < GRADIENT_TOL:
            logger.debug(f"gradient descent converged after {iteration} iterations")
            return p
        step = min(2.0 * step, 1e6 * base)
        for _ in range(200):
            candidate = p - step * grad
            candidate_value = local_cost(candidate, samples, cost)
            if candidate_value <= value - 0.5 * step * norm2:
                break
            step *= 0.5
        p, value = candidate, candidate_value
    raise NoConvergence(f"gradient descent did not reach |grad J| < {GRADIENT_TOL} "
                        f"in {MAX_ITERATIONS} iterations")


def local_optimum(boundary, density, sector, cost_kind=QUADRATIC, quad=DEFAULT_QUADRATURE,
                  integrals: Optional[SectorIntegrals] = None) -> np.ndarray:
    """Minimiser of the sector cost; pass ``integrals`` to reuse already computed moments."""
    if sector.width == 0.0:
        raise EmptySector(f"sector at {sector.reference} has zero width")
    if integrals is None:
        integrals = sector_integrals(boundary, density, sector, quad, with_gradients=False)
    centroid = integrals.centroid
    if isinstance(cost_kind, QuadraticCost):
        return centroid

    samples = sector_samples(boundary, density, sector, quad)
    optimum = _descend(centroid, samples, cost_kind, integrals.mass)
    if hessian_rank(optimum, samples, cost_kind) < 2:
        logger.warning(f"cost '{cost_kind.name}' has a rank-deficient Hessian at {optimum.tolist()}")
    return optimum
