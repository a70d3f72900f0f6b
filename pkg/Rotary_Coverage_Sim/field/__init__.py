"""
Densities and sector integrals.
"""
from .density import DensityField, uniform_density, benchmark_density, polynomial_density, density_by_name
from .quadrature import QuadratureConfig, GAUSS_LEGENDRE, SIMPSON, unit_rule, graded_rule
from .integrals import (
    PartitionGradients, SectorIntegrals, sector_samples, sector_integrals, partition_gradients,
    sector_mass, sector_moment, sector_second_moment, sector_centroid,
    mass_phase_gradients, mass_reference_gradient, grid_integrals_oracle, grid_mass_oracle,
)

__all__ = [
    'DensityField', 'uniform_density', 'benchmark_density', 'polynomial_density', 'density_by_name',
    'QuadratureConfig', 'GAUSS_LEGENDRE', 'SIMPSON', 'unit_rule', 'graded_rule',
    'PartitionGradients', 'SectorIntegrals', 'sector_samples', 'sector_integrals', 'partition_gradients',
    'sector_mass', 'sector_moment', 'sector_second_moment', 'sector_centroid',
    'mass_phase_gradients', 'mass_reference_gradient', 'grid_integrals_oracle', 'grid_mass_oracle',
]
