"""
Agent and swarm state containers, control gains, and seeded initialisation.
"""
from dataclasses import dataclass, replace, asdict
from typing import Tuple
import logging

import numpy as np

from Rotary_Coverage_Sim.geometry.region import RegionBoundary
from Rotary_Coverage_Sim.geometry.sector import TWO_PI
from Rotary_Coverage_Sim.network.topology import RingTopology

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AgentState:
    position: Tuple[float, float]
    reference: Tuple[float, float]
    phase: float

    def __post_init__(self):
        object.__setattr__(self, "position", (float(self.position[0]), float(self.position[1])))
        object.__setattr__(self, "reference", (float(self.reference[0]), float(self.reference[1])))
        object.__setattr__(self, "phase", float(self.phase))


@dataclass(frozen=True)
class Gains:
    """Control gains; defaults are the six-agent ellipse experiment's values."""

    kappa_p: float = 0.04
    kappa_phi: float = 0.045
    kappa_r: float = 0.05

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SwarmState:
    """N agents on a ring plus the simulation time."""

    agents: Tuple[AgentState, ...]
    time: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "agents", tuple(self.agents))
        if len(self.agents) < 3:
            raise ValueError(f"need at least 3 agents, got {len(self.agents)}")

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def topology(self) -> RingTopology:
        return RingTopology(self.n)

    def phases(self) -> np.ndarray:
        return np.array([a.phase for a in self.agents])

    def references(self) -> np.ndarray:
        return np.array([a.reference for a in self.agents])

    def positions(self) -> np.ndarray:
        return np.array([a.position for a in self.agents])

    @classmethod
    def from_arrays(cls, phases, references, positions, time: float = 0.0) -> "SwarmState":
        agents = tuple(AgentState(tuple(p), tuple(r), float(phi))
                       for phi, r, p in zip(phases, references, positions))
        return cls(agents, time)

    def with_time(self, time: float) -> "SwarmState":
        return replace(self, time=float(time))


def sample_inside(boundary: RegionBoundary, rng: np.random.Generator, count: int) -> np.ndarray:
    """Uniform samples strictly inside the region by rejection from its bounding box."""
    x0, x1, y0, y1 = boundary.bounding_box()
    points = np.empty((0, 2))
    while len(points) < count:
        batch = rng.uniform([x0, y0], [x1, y1], size=(4 * count, 2))
        inside = boundary.level(batch[:, 0], batch[:, 1]) < 0.0
        points = np.vstack([points, batch[inside]])
    return points[:count]


def random_initial_state(boundary: RegionBoundary, n: int, rng: np.random.Generator) -> SwarmState:
    """Positions and references uniform in the region, phases uniform then sorted."""
    positions = sample_inside(boundary, rng, n)
    references = sample_inside(boundary, rng, n)
    phases = np.sort(rng.uniform(0.0, TWO_PI, size=n))
    logger.debug(f"initial phases: {np.round(phases, 4).tolist()}")
    return SwarmState.from_arrays(phases, references, positions, 0.0)


def make_rng(seed: int) -> np.random.Generator:
    """The simulator's only random source: numpy's PCG64 bit generator."""
    return np.random.Generator(np.random.PCG64(seed))
