from .diagnostics import (
    ConsensusTolerances, MetricsRecord, ring_sectors, lyapunov_value, gamma, mass_spread,
    lyapunov_rate, coverage_cost, centroid_errors, build_record, consensus_reached,
)

__all__ = [
    'ConsensusTolerances', 'MetricsRecord', 'ring_sectors', 'lyapunov_value', 'gamma', 'mass_spread',
    'lyapunov_rate', 'coverage_cost', 'centroid_errors', 'build_record', 'consensus_reached',
]
