"""
Ring communication topology and the per-agent neighbour view.

Agent i (1-based label) may read from agents i+1, i-1 and i-2 only.
``neighbor_view`` is the single place where another agent's state is read;
the rate functions in ``dynamics`` receive nothing but their own agent state
and a NeighborView.
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, TYPE_CHECKING

import numpy as np

from Rotary_Coverage_Sim.utils.errors import IndexOutOfRange

if TYPE_CHECKING:
    from Rotary_Coverage_Sim.dynamics.state import SwarmState


@dataclass(frozen=True)
class RingTopology:
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"a ring needs at least 3 agents, got {self.n}")

    def wrap(self, label: int) -> int:
        """Map any integer onto the labels 1..n (0 -> n, n+1 -> 1)."""
        return (label - 1) % self.n + 1

    def check(self, label: int) -> None:
        if not 1 <= label <= self.n:
            raise IndexOutOfRange(f"agent label {label} outside 1..{self.n}")

    def neighbors(self, label: int) -> Tuple[int, int, int]:
        """(i+1, i-1, i-2) with wrap-around."""
        self.check(label)
        return self.wrap(label + 1), self.wrap(label - 1), self.wrap(label - 2)


@dataclass(frozen=True)
class NeighborView:
    """What agent i receives from its neighbours in one synchronous round."""

    label: int
    m_im2: float
    m_im1: float
    m_ip1: float
    r_im1: Tuple[float, float]
    r_ip1: Tuple[float, float]
    phi_ip1: float
    dm_im1_dphi_i: float

    @property
    def has_workloads(self) -> bool:
        return not np.isnan(self.m_im1)


def neighbor_view(state: "SwarmState", masses: Optional[Sequence[float]], i: int,
                  end_gradients: Optional[Sequence[float]] = None) -> NeighborView:
    """Build agent ``i``'s view of its neighbours from a state snapshot.

    ``masses`` and ``end_gradients`` are the values each agent broadcast for
    its own sector in this round (indexed 0..N-1). Without masses (the
    pointer round) the workload fields are NaN.
    """
    ring = RingTopology(len(state.agents))
    ip1, im1, im2 = ring.neighbors(i)
    successor, predecessor = state.agents[ip1 - 1], state.agents[im1 - 1]

    nan = float("nan")
    if masses is None:
        m_im2 = m_im1 = m_ip1 = nan
    else:
        m_im2, m_im1, m_ip1 = float(masses[im2 - 1]), float(masses[im1 - 1]), float(masses[ip1 - 1])
    grad = nan if end_gradients is None else float(end_gradients[im1 - 1])

    return NeighborView(
        label=i,
        m_im2=m_im2,
        m_im1=m_im1,
        m_ip1=m_ip1,
        r_im1=tuple(predecessor.reference),
        r_ip1=tuple(successor.reference),
        phi_ip1=float(successor.phase),
        dm_im1_dphi_i=grad,
    )
