"""
Partition dynamics and agent control law.

Rates are computed in two synchronous rounds over one state snapshot:

1. pointer round - every agent reads its successor's phase, builds its own
   sector and integrates it (mass, centroid, mass gradients);
2. workload round - every agent reads the workloads its neighbours
   broadcast and assembles its phase, reference and position rates.

Only ``swarm_rates`` touches the SwarmState, and only through
``neighbor_view``; ``agent_rates`` sees one agent and its view.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, NamedTuple
import logging
import math

import numpy as np

from Rotary_Coverage_Sim.field.integrals import SectorIntegrals, sector_integrals, DEFAULT_QUADRATURE
from Rotary_Coverage_Sim.geometry.sector import Sector, TWO_PI
from Rotary_Coverage_Sim.network.topology import NeighborView, neighbor_view
from Rotary_Coverage_Sim.utils.errors import CoverageError, NonFinite
from .optimum import QUADRATIC, local_optimum
from .state import AgentState, Gains, SwarmState

logger = logging.getLogger(__name__)


def wrap_phase(phi: float) -> float:
    """phi mod 2*pi in [0, 2*pi)."""
    phi = float(phi)
    if not math.isfinite(phi):
        raise NonFinite(f"phase {phi} is not finite")
    wrapped = phi - TWO_PI * math.floor(phi / TWO_PI)
    return 0.0 if wrapped >= TWO_PI else wrapped


def phase_rate(m_im2: float, m_im1: float, m_i: float, m_ip1: float,
               dmi_dphi_i: float, dmim1_dphi_i: float, gains: Gains) -> float:
    """Rotation rate of pointer i, the start of sector i and the end of sector i-1."""
    return -gains.kappa_phi * ((2.0 * m_i - m_im1 - m_ip1) * dmi_dphi_i
                               + (2.0 * m_im1 - m_im2 - m_i) * dmim1_dphi_i)


def reference_rate(m_im1: float, m_i: float, m_ip1: float, dmi_dref,
                   r_im1, r_i, r_ip1, gains: Gains) -> np.ndarray:
    """Velocity of reference point i: workload gradient plus ring Laplacian."""
    laplacian = 2.0 * np.asarray(r_i, dtype=float) - np.asarray(r_im1, dtype=float) - np.asarray(r_ip1, dtype=float)
    return -gains.kappa_r * ((2.0 * m_i - m_im1 - m_ip1) * np.asarray(dmi_dref, dtype=float) + laplacian)


def control_input(p, p_star, gains: Gains) -> np.ndarray:
    return -gains.kappa_p * (np.asarray(p, dtype=float) - np.asarray(p_star, dtype=float))


class AgentRates(NamedTuple):
    phi_dot: float
    r_dot: np.ndarray
    p_dot: np.ndarray


@dataclass(frozen=True)
class RateEvaluation:
    """Rates of every agent plus the sector data they were computed from."""

    state: SwarmState
    rates: List[AgentRates]
    integrals: List[SectorIntegrals]
    optima: List[np.ndarray]

    @property
    def masses(self) -> List[float]:
        return [it.mass for it in self.integrals]

    def phi_dots(self) -> np.ndarray:
        return np.array([r.phi_dot for r in self.rates])

    def r_dots(self) -> np.ndarray:
        return np.array([r.r_dot for r in self.rates])

    def p_dots(self) -> np.ndarray:
        return np.array([r.p_dot for r in self.rates])


def own_sector(agent: AgentState, view: NeighborView) -> Sector:
    """Sector i: from the agent's own pointer to its successor's, around its own reference."""
    return Sector(agent.reference, agent.phase, view.phi_ip1)


def agent_rates(agent: AgentState, integrals: SectorIntegrals, p_star, view: NeighborView,
                gains: Gains) -> AgentRates:
    """Rates of one agent from its own sector data and its neighbour view."""
    grads = integrals.gradients
    phi_dot = phase_rate(view.m_im2, view.m_im1, integrals.mass, view.m_ip1,
                         grads.dm_dphi_start, view.dm_im1_dphi_i, gains)
    r_dot = reference_rate(view.m_im1, integrals.mass, view.m_ip1, grads.dm_dref,
                           view.r_im1, agent.reference, view.r_ip1, gains)
    p_dot = control_input(agent.position, p_star, gains)
    return AgentRates(float(phi_dot), r_dot, p_dot)


def swarm_rates(state: SwarmState, boundary, density, gains: Gains, quad=DEFAULT_QUADRATURE,
                cost_kind=QUADRATIC, workers: int = 1) -> RateEvaluation:
    """Phase, reference and position rates of every agent at ``state``."""

    def pointer_round(index: int):
        label = index + 1
        try:
            agent = state.agents[index]
            view = neighbor_view(state, None, label)
            sector = own_sector(agent, view)
            integrals = sector_integrals(boundary, density, sector, quad)
            optimum = local_optimum(boundary, density, sector, cost_kind, quad, integrals=integrals)
            return integrals, np.asarray(optimum, dtype=float)
        except CoverageError as err:
            if err.agent is None:
                err.agent = label
            raise

    indices = range(state.n)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(pointer_round, indices))
    else:
        results = [pointer_round(i) for i in indices]
    integrals = [r[0] for r in results]
    optima = [r[1] for r in results]

    masses = [it.mass for it in integrals]
    end_gradients = [it.gradients.dm_dphi_end for it in integrals]
    rates = []
    for index in indices:
        view = neighbor_view(state, masses, index + 1, end_gradients)
        rates.append(agent_rates(state.agents[index], integrals[index], optima[index], view, gains))
    return RateEvaluation(state, rates, integrals, optima)
