"""
Partition dynamics, agent control law and time integration.
"""
from .state import AgentState, Gains, SwarmState, random_initial_state, sample_inside, make_rng
from .optimum import (
    QuadraticCost, GenericCost, QUADRATIC, cost_by_name, local_optimum,
    local_cost, local_cost_gradient, hessian_rank,
)
from .rates import (
    wrap_phase, phase_rate, reference_rate, control_input, AgentRates, RateEvaluation,
    own_sector, agent_rates, swarm_rates,
)
from .integrator import EULER, RK4, INTEGRATORS, SimulationEvent, Integrator, sector_widths, step

__all__ = [
    'AgentState', 'Gains', 'SwarmState', 'random_initial_state', 'sample_inside', 'make_rng',
    'QuadraticCost', 'GenericCost', 'QUADRATIC', 'cost_by_name', 'local_optimum',
    'local_cost', 'local_cost_gradient', 'hessian_rank',
    'wrap_phase', 'phase_rate', 'reference_rate', 'control_input', 'AgentRates', 'RateEvaluation',
    'own_sector', 'agent_rates', 'swarm_rates',
    'EULER', 'RK4', 'INTEGRATORS', 'SimulationEvent', 'Integrator', 'sector_widths', 'step',
]
