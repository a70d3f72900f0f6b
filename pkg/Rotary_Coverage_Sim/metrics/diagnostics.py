"""
Convergence and coverage diagnostics.

These are observer-side quantities: unlike the rate functions they may read
the whole swarm state.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence
import logging

import numpy as np

from Rotary_Coverage_Sim.dynamics.optimum import QUADRATIC, QuadraticCost, local_cost
from Rotary_Coverage_Sim.dynamics.rates import RateEvaluation
from Rotary_Coverage_Sim.dynamics.state import Gains, SwarmState
from Rotary_Coverage_Sim.field.integrals import (
    SectorIntegrals, sector_integrals, sector_samples, DEFAULT_QUADRATURE,
)
from Rotary_Coverage_Sim.geometry.sector import Sector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConsensusTolerances:
    tol_gamma: float = 1e-4
    tol_mass: float = 0.01
    tol_centroid: float = 1e-3

    def to_dict(self) -> dict:
        return {"tol_gamma": self.tol_gamma, "tol_mass": self.tol_mass, "tol_centroid": self.tol_centroid}


@dataclass(frozen=True)
class MetricsRecord:
    """One emitted sample of the run's diagnostics."""

    time: float
    masses: List[float]
    gammas: List[float]
    lyapunov: float
    cost: Optional[float]
    centroid_errors: List[float]
    mass_spread: float
    lyapunov_rate: Optional[float] = None


def ring_sectors(state: SwarmState) -> List[Sector]:
    """Sector i spans pointer i to pointer i+1 around reference i."""
    n = state.n
    return [Sector(state.agents[i].reference, state.agents[i].phase, state.agents[(i + 1) % n].phase)
            for i in range(n)]


def lyapunov_value(state: SwarmState, masses: Sequence[float]) -> float:
    """Half the summed squared workload and reference gaps between ring neighbours."""
    m = np.asarray(masses, dtype=float)
    r = state.references()
    mass_gaps = m - np.roll(m, -1)
    ref_gaps = r - np.roll(r, -1, axis=0)
    return float(0.5 * np.sum(mass_gaps ** 2) + 0.5 * np.sum(ref_gaps ** 2))


def gamma(state: SwarmState) -> List[float]:
    """|r_i - r_{i+1}|^2 around the ring."""
    r = state.references()
    return np.sum((r - np.roll(r, -1, axis=0)) ** 2, axis=1).tolist()


def mass_spread(masses: Sequence[float]) -> float:
    m = np.asarray(masses, dtype=float)
    mean = float(np.mean(m))
    return float(np.max(np.abs(m - mean)) / mean)


def lyapunov_rate(evaluation: RateEvaluation, gains: Gains) -> float:
    """Predicted dV/dt along the partition dynamics; never positive."""
    phi = evaluation.phi_dots()
    r = evaluation.r_dots()
    return float(-np.sum(phi ** 2) / gains.kappa_phi - np.sum(r ** 2) / gains.kappa_r)


def _integrals_for(state, boundary, density, quad, integrals):
    if integrals is not None:
        return integrals
    return [sector_integrals(boundary, density, s, quad, with_gradients=False) for s in ring_sectors(state)]


def coverage_cost(state: SwarmState, boundary, density, quad=DEFAULT_QUADRATURE, cost_kind=QUADRATIC,
                  integrals: Optional[Sequence[SectorIntegrals]] = None) -> float:
    """Total service cost of every agent over its own sector."""
    integrals = _integrals_for(state, boundary, density, quad, integrals)
    total = 0.0
    for agent, it in zip(state.agents, integrals):
        p = np.asarray(agent.position)
        if isinstance(cost_kind, QuadraticCost):
            # |p - q|^2 = |p|^2 - 2 p.q + |q|^2
            total += float(it.mass * (p @ p) - 2.0 * (p @ it.moment) + it.second_moment)
        else:
            total += local_cost(p, sector_samples(boundary, density, it.sector, quad), cost_kind)
    return max(total, 0.0)


def centroid_errors(state: SwarmState, integrals: Sequence[SectorIntegrals]) -> List[float]:
    return [float(np.linalg.norm(np.asarray(agent.position) - it.centroid))
            for agent, it in zip(state.agents, integrals)]


def build_record(evaluation: RateEvaluation, boundary, density, gains: Gains, quad=DEFAULT_QUADRATURE,
                 cost_kind=QUADRATIC, with_cost: bool = True) -> MetricsRecord:
    """Metrics at the state a RateEvaluation was computed for."""
    state = evaluation.state
    masses = evaluation.masses
    cost = coverage_cost(state, boundary, density, quad, cost_kind, evaluation.integrals) if with_cost else None
    record = MetricsRecord(
        time=state.time,
        masses=list(masses),
        gammas=gamma(state),
        lyapunov=lyapunov_value(state, masses),
        cost=cost,
        centroid_errors=centroid_errors(state, evaluation.integrals),
        mass_spread=mass_spread(masses),
        lyapunov_rate=lyapunov_rate(evaluation, gains),
    )
    logger.debug(f"t={record.time:.4f} V={record.lyapunov:.6g} spread={record.mass_spread:.4g}")
    return record


def consensus_reached(record: MetricsRecord, tol_gamma: float, tol_mass: float, tol_centroid: float) -> bool:
    return (max(record.gammas) < tol_gamma
            and record.mass_spread < tol_mass
            and max(record.centroid_errors) < tol_centroid)
