"""
Fixed-step time integration of the coupled (phase, reference, position) system.
"""
from dataclasses import dataclass, field
from typing import List, Optional
import logging

import numpy as np

from Rotary_Coverage_Sim.field.integrals import DEFAULT_QUADRATURE
from Rotary_Coverage_Sim.geometry.sector import TWO_PI
from Rotary_Coverage_Sim.utils.errors import OriginOutsideRegion, ReferenceEscaped
from .optimum import QUADRATIC
from .rates import RateEvaluation, swarm_rates, wrap_phase
from .state import Gains, SwarmState

logger = logging.getLogger(__name__)

EULER = "euler"
RK4 = "rk4"
INTEGRATORS = (EULER, RK4)


@dataclass(frozen=True)
class SimulationEvent:
    """A non-fatal (or final fatal) occurrence recorded in the run's event log."""

    kind: str
    time: float
    agent: Optional[int] = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind, "time": self.time, "agent": self.agent, "detail": self.detail}


def sector_widths(phases: np.ndarray) -> np.ndarray:
    """Width of sector i, from pointer i to pointer i+1 around the ring."""
    widths = np.mod(np.roll(phases, -1) - phases, TWO_PI)
    return np.where(widths >= TWO_PI, 0.0, widths)


@dataclass
class Integrator:
    """Steps a SwarmState with explicit Euler or classical RK4."""

    boundary: object
    density: object
    gains: Gains
    dt: float = 0.01
    kind: str = RK4
    quad: object = DEFAULT_QUADRATURE
    cost_kind: object = QUADRATIC
    workers: int = 1
    events: List[SimulationEvent] = field(default_factory=list)

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.kind not in INTEGRATORS:
            raise ValueError(f"unknown integrator '{self.kind}', expected one of {INTEGRATORS}")

    def rates(self, state: SwarmState) -> RateEvaluation:
        try:
            return swarm_rates(state, self.boundary, self.density, self.gains, self.quad,
                               self.cost_kind, self.workers)
        except OriginOutsideRegion as err:
            raise ReferenceEscaped(f"reference left the region at t={state.time:.6g}: {err}",
                                   agent=err.agent) from err

    @staticmethod
    def _derivative(evaluation: RateEvaluation) -> np.ndarray:
        return np.column_stack([evaluation.phi_dots(), evaluation.r_dots(), evaluation.p_dots()])

    @staticmethod
    def _pack(state: SwarmState) -> np.ndarray:
        return np.column_stack([state.phases(), state.references(), state.positions()])

    @staticmethod
    def _unpack(y: np.ndarray, time: float) -> SwarmState:
        phases = [wrap_phase(phi) for phi in y[:, 0]]
        return SwarmState.from_arrays(phases, y[:, 1:3], y[:, 3:5], time)

    def step(self, state: SwarmState, first_stage: Optional[RateEvaluation] = None) -> SwarmState:
        """Advance by dt; ``first_stage`` may carry the rates already evaluated at ``state``."""
        dt = self.dt
        y0 = self._pack(state)
        k1 = self._derivative(first_stage if first_stage is not None else self.rates(state))
        if self.kind == EULER:
            y1 = y0 + dt * k1
        else:
            t = state.time
            k2 = self._derivative(self.rates(self._unpack(y0 + 0.5 * dt * k1, t + 0.5 * dt)))
            k3 = self._derivative(self.rates(self._unpack(y0 + 0.5 * dt * k2, t + 0.5 * dt)))
            k4 = self._derivative(self.rates(self._unpack(y0 + dt * k3, t + dt)))
            y1 = y0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

        new_state = self._unpack(y1, state.time + dt)
        self._validate(state, new_state)
        return new_state

    def _validate(self, old: SwarmState, new: SwarmState) -> None:
        for index, agent in enumerate(new.agents):
            if not self.boundary.contains_strictly(agent.reference):
                raise ReferenceEscaped(
                    f"reference at ({agent.reference[0]:.6g}, {agent.reference[1]:.6g}) "
                    f"left the region at t={new.time:.6g}", agent=index + 1)
        jumps = np.abs(sector_widths(new.phases()) - sector_widths(old.phases()))
        for index in np.flatnonzero(jumps > np.pi):
            event = SimulationEvent("SectorInverted", new.time, int(index) + 1,
                                    f"width jumped by {jumps[index]:.6g} rad")
            logger.warning(f"SectorInverted: agent {index + 1} at t={new.time:.6g} ({event.detail})")
            self.events.append(event)


def step(state: SwarmState, dt: float, integrator_kind: str, boundary, density, gains: Gains,
         quad=DEFAULT_QUADRATURE, cost_kind=QUADRATIC, workers: int = 1,
         events: Optional[List[SimulationEvent]] = None) -> SwarmState:
    """One integration step; SectorInverted events are appended to ``events`` if given."""
    integrator = Integrator(boundary, density, gains, dt, integrator_kind, quad, cost_kind, workers,
                            events if events is not None else [])
    return integrator.step(state)
